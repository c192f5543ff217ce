#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "clonescope/classifier/gbdt.hpp"
#include "clonescope/classifier/hyper.hpp"
#include "clonescope/classifier/model_io.hpp"
#include "clonescope/error.hpp"
#include "clonescope/rng.hpp"

using namespace clonescope;
using namespace clonescope::gbdt;

namespace {

// y = 1 iff x0 >= 5; every other feature constant.
std::vector<LabeledPair> step_data() {
    std::vector<LabeledPair> d;
    for (int rep = 0; rep < 4; ++rep)
        for (int v = 0; v < 10; ++v) {
            LabeledPair p;
            p.x[0] = v;
            p.y = v >= 5;
            d.push_back(p);
        }
    return d;
}

// P(y = 1 | x) = x0 with a few distractor features.
std::vector<LabeledPair> noisy_data(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    std::vector<LabeledPair> d(n);
    for (auto& p : d) {
        for (std::size_t j = 0; j < 4; ++j) p.x[j] = rng.uniform();
        p.y = rng.bernoulli(p.x[0]);
    }
    return d;
}

HyperPoint small_hyper() {
    HyperPoint h;
    h.num_rounds = 20;
    h.min_samples_leaf = 1;
    h.learning_rate = 0.5;
    return h;
}

}  // namespace

TEST(Hyper, DefaultsAndRoundTrip) {
    const HyperPoint h;
    EXPECT_EQ(h.num_leaves, 31);
    EXPECT_EQ(h.num_rounds, 100);
    EXPECT_EQ(hyper_from_json(to_json(h)), h);
}

TEST(HyperProperty, NormalizeRoundTrip) {
    Rng rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        UnitPoint u;
        for (auto& c : u) c = rng.uniform();
        const auto h = denormalize(u);
        const auto back = denormalize(normalize(h));
        EXPECT_EQ(back.num_leaves, h.num_leaves);
        EXPECT_EQ(back.max_depth, h.max_depth);
        EXPECT_EQ(back.num_rounds, h.num_rounds);
        EXPECT_EQ(back.min_samples_leaf, h.min_samples_leaf);
        // the log map costs at most a few ulps on the learning rate
        EXPECT_NEAR(back.learning_rate, h.learning_rate, 1e-15);
        EXPECT_NEAR(back.feature_fraction, h.feature_fraction, 1e-15);
        EXPECT_NEAR(back.bagging_fraction, h.bagging_fraction, 1e-15);
        for (double c : normalize(h)) {
            EXPECT_GE(c, 0.0);
            EXPECT_LE(c, 1.0);
        }
    }
}

TEST(Hyper, UnitCubeCornersMapToBounds) {
    UnitPoint lo{};
    UnitPoint hi{};
    hi.fill(1.0);
    const auto a = denormalize(lo);
    const auto b = denormalize(hi);
    EXPECT_EQ(a.num_leaves, 2);
    EXPECT_EQ(b.max_depth, 12);
    EXPECT_NEAR(a.learning_rate, 0.01, 1e-15);
    EXPECT_NEAR(b.learning_rate, 1.0, 1e-15);
    UnitPoint out{};
    out.fill(3.0);
    EXPECT_EQ(denormalize(out), b);
}

TEST(Hyper, LearningRateIsLogScaled) {
    UnitPoint u = normalize(HyperPoint{});
    u[2] = 0.5;
    EXPECT_NEAR(denormalize(u).learning_rate, 0.1, 1e-12);
}

TEST(Hyper, ValidateRejectsOutOfDomain) {
    HyperPoint h;
    h.num_leaves = 1;
    EXPECT_THROW(validate(h), std::invalid_argument);
    h = {};
    h.feature_fraction = 0.0;
    EXPECT_THROW(validate(h), std::invalid_argument);
    EXPECT_NO_THROW(validate(HyperPoint{}));
}

TEST(Gbdt, FirstSplitIsTheMidpointOfTheStep) {
    const auto m = train(step_data(), small_hyper(), 1);
    ASSERT_FALSE(m.trees.empty());
    const auto& root = m.trees[0].nodes[0];
    EXPECT_EQ(root.feature, 0);
    EXPECT_EQ(root.threshold, 4.5);
    for (const auto& p : step_data()) EXPECT_EQ(predict_proba(m, p.x) > 0.5, p.y == 1);
}

TEST(Gbdt, BaseScoreIsLogOdds) {
    auto d = step_data();
    const auto m = train(d, small_hyper(), 1);
    EXPECT_DOUBLE_EQ(m.base_score, 0.0);
    d.push_back(d.back());
    const auto m2 = train(d, small_hyper(), 1);
    EXPECT_NEAR(m2.base_score, std::log(21.0 / 20.0), 1e-12);
}

TEST(Gbdt, ConstantFeaturesGiveConstantModel) {
    std::vector<LabeledPair> d(10);
    for (std::size_t i = 0; i < 3; ++i) d[i].y = 1;
    const auto m = train(d, small_hyper(), 1);
    EXPECT_NEAR(predict_proba(m, d[0].x), 0.3, 1e-12);
    EXPECT_THROW(feature_importance(m), ZeroSplits);
}

TEST(Gbdt, SingleClassIsDegenerate) {
    std::vector<LabeledPair> d(5);
    EXPECT_THROW(train(d, small_hyper(), 1), DegenerateData);
    EXPECT_THROW(train({}, small_hyper(), 1), DegenerateData);
}

TEST(Gbdt, RejectsBadInput) {
    HyperPoint h = small_hyper();
    h.num_leaves = 0;
    EXPECT_THROW(train(step_data(), h, 1), std::invalid_argument);
    const auto m = train(step_data(), small_hyper(), 1);
    const std::vector<double> short_x(3, 0.0);
    EXPECT_THROW(predict_proba(m, short_x), DimensionMismatch);
}

TEST(Gbdt, StableLogLossAtExtremes) {
    EXPECT_NEAR(stable_log_loss(800.0, 0), 800.0, 1e-9);
    EXPECT_NEAR(stable_log_loss(-800.0, 1), 800.0, 1e-9);
    EXPECT_NEAR(stable_log_loss(0.0, 1), std::log(2.0), 1e-15);
    EXPECT_TRUE(std::isfinite(stable_log_loss(1e6, 1)));
}

TEST(GbdtProperty, StructureRespectsHyperparameters) {
    const auto d = noisy_data(3, 400);
    Rng rng(5);
    for (int trial = 0; trial < 12; ++trial) {
        UnitPoint u;
        for (auto& c : u) c = rng.uniform();
        auto h = denormalize(u);
        h.num_rounds = std::min(h.num_rounds, 30);
        const auto m = train(d, h, static_cast<std::uint64_t>(trial));
        ASSERT_EQ(m.trees.size(), static_cast<std::size_t>(h.num_rounds));
        for (const auto& t : m.trees) {
            EXPECT_LE(t.leaf_count(), h.num_leaves);
            EXPECT_LE(t.depth(), h.max_depth);
        }
        const auto curve = loss_curve(d, m);
        if (h.bagging_fraction == 1.0 && h.feature_fraction == 1.0) {
            for (std::size_t k = 1; k < curve.size(); ++k) EXPECT_LE(curve[k], curve[k - 1] + 1e-12);
        }
    }
}

TEST(GbdtProperty, DeterministicInSeed) {
    const auto d = noisy_data(4, 300);
    HyperPoint h = small_hyper();
    h.bagging_fraction = 0.6;
    h.feature_fraction = 0.5;
    const auto a = train(d, h, 9);
    const auto b = train(d, h, 9);
    EXPECT_EQ(model_to_json(a), model_to_json(b));
}

TEST(GbdtProperty, Calibration) {
    const auto d = noisy_data(6, 4000);
    HyperPoint h;
    h.num_rounds = 40;
    h.num_leaves = 4;
    const auto m = train(d, h, 2);
    const auto test = noisy_data(7, 4000);
    // bucket by predicted probability and compare with observed frequency
    std::array<double, 5> pred{};
    std::array<double, 5> obs{};
    std::array<int, 5> cnt{};
    for (const auto& p : test) {
        const double q = predict_proba(m, p.x);
        const auto b = std::min<std::size_t>(4, static_cast<std::size_t>(q * 5));
        pred[b] += q;
        obs[b] += p.y;
        ++cnt[b];
    }
    for (std::size_t b = 0; b < 5; ++b) {
        if (cnt[b] < 200) continue;
        EXPECT_NEAR(pred[b] / cnt[b], obs[b] / cnt[b], 0.06) << "bucket " << b;
    }
}

TEST(Gbdt, ImportanceSumsToOne) {
    const auto m = train(noisy_data(8, 500), small_hyper(), 1);
    const auto fi = feature_importance(m);
    double s = 0.0;
    for (double w : fi.per_feature) s += w;
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_GT(fi.per_feature[0], fi.per_feature[1]);
    const auto table = importance_table(fi);
    EXPECT_NE(table.find("Rank | Feature | Weight"), std::string::npos);
    EXPECT_NE(table.find("Arithmetic operator node feature"), std::string::npos);
}

TEST(ModelIo, SaveLoadPreservesPredictions) {
    const auto d = noisy_data(9, 300);
    const auto m = train(d, small_hyper(), 3);
    const auto path = std::filesystem::temp_directory_path() / "clonescope_model_io_test.json";
    save_model(m, path);
    const auto back = load_model(path);
    std::filesystem::remove(path);
    for (const auto& p : d) EXPECT_EQ(predict_proba(m, p.x), predict_proba(back, p.x));
    EXPECT_EQ(model_id(m), model_id(back));
    EXPECT_EQ(model_id(m).size(), 16u);
}

TEST(ModelIo, RejectsMalformedDocuments) {
    EXPECT_THROW(model_from_json(nlohmann::ordered_json::parse(R"({"schema_version": 1})")), Error);
    EXPECT_THROW(load_model("/nonexistent/model.json"), Error);
}
