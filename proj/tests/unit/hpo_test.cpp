#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "clonescope/error.hpp"
#include "clonescope/hpo/diffusion.hpp"
#include "clonescope/hpo/eval_net.hpp"
#include "clonescope/hpo/optimizer.hpp"

using namespace clonescope;
using namespace clonescope::hpo;

namespace {

Point uniform_point(Rng& rng) {
    Point p;
    for (auto& c : p) c = rng.uniform();
    return p;
}

std::vector<gbdt::LabeledPair> toy_pairs(std::uint64_t seed, std::size_t n) {
    Rng rng(seed);
    std::vector<gbdt::LabeledPair> d(n);
    for (auto& p : d) {
        p.x[0] = rng.uniform();
        p.x[1] = rng.uniform();
        p.y = rng.bernoulli(p.x[0] * 0.8 + 0.1);
    }
    return d;
}

}  // namespace

TEST(Diffusion, ScheduleEndpointsAndProducts) {
    for (int T : {1, 2, 5, 8, 50}) {
        const DiffusionSchedule s(T);
        EXPECT_EQ(s.g(T), 0.0);
        EXPECT_EQ(s.D(T), 1.0);
        EXPECT_EQ(s.D_bar(0), 1.0);
        for (int t = 1; t <= T; ++t) {
            EXPECT_DOUBLE_EQ(s.g(t) + s.D(t), 1.0);
            EXPECT_LE(s.D_bar(t), s.D_bar(t - 1));
        }
    }
    const DiffusionSchedule s(8);
    const double d1 = std::pow(std::sin(std::numbers::pi / 16.0), 2.0);
    const double d2 = std::pow(std::sin(std::numbers::pi / 8.0), 2.0);
    EXPECT_NEAR(s.D_bar(2), d1 * d2, 1e-15);
    EXPECT_NEAR(s.g(4), 0.5, 1e-15);
    EXPECT_THROW(DiffusionSchedule(0), std::invalid_argument);
    EXPECT_THROW(static_cast<void>(s.g(9)), std::out_of_range);
}

TEST(Diffusion, StepsScaleByScheduleTerms) {
    const DiffusionSchedule s(8);
    Rng rng(1);
    const auto v = uniform_point(rng);
    const auto z = normal_point(rng);
    const auto out = forward_step(v, 3, s, z);
    const auto marg = marginal_sample(v, 3, s, z);
    for (std::size_t d = 0; d < v.size(); ++d) {
        EXPECT_DOUBLE_EQ(out[d], std::sqrt(s.D(3)) * v[d] + std::sqrt(s.g(3)) * z[d]);
        EXPECT_DOUBLE_EQ(marg[d], std::sqrt(s.D_bar(3)) * v[d] + std::sqrt(1.0 - s.D_bar(3)) * z[d]);
    }
}

TEST(Diffusion, BatchMatchesSinglePoint) {
    const DiffusionSchedule s(8);
    Rng rng(2);
    std::vector<double> v;
    std::vector<double> z;
    std::vector<Point> pts;
    std::vector<Point> noise;
    for (int i = 0; i < 9; ++i) {
        pts.push_back(uniform_point(rng));
        noise.push_back(normal_point(rng));
        v.insert(v.end(), pts.back().begin(), pts.back().end());
        z.insert(z.end(), noise.back().begin(), noise.back().end());
    }
    forward_step_batch(v, 5, s, z);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto single = forward_step(pts[i], 5, s, noise[i]);
        for (std::size_t d = 0; d < single.size(); ++d) EXPECT_EQ(v[i * single.size() + d], single[d]);
    }
}

TEST(DiffusionProperty, UnitVarianceIsPreserved) {
    const DiffusionSchedule s(8);
    Rng rng(3);
    const std::size_t n = 40000;
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    std::vector<double> z(n);
    for (int t = 1; t <= 8; ++t) {
        for (auto& x : z) x = rng.normal();
        forward_step_batch(v, t, s, z);
        double m2 = 0.0;
        for (double x : v) m2 += x * x;
        EXPECT_NEAR(m2 / n, 1.0, 4.0 * std::sqrt(2.0 / n)) << "t = " << t;
    }
}

TEST(EvalNet, FitsAConstant) {
    std::vector<Sample> samples;
    Rng rng(4);
    for (int i = 0; i < 32; ++i) samples.push_back({uniform_point(rng), 0.42});
    EvalNet net(5);
    const auto rep = train_eval_net(net, samples, 200, 6);
    EXPECT_LE(rep.final_mse, 1e-6);
    EXPECT_NEAR(net.predict(uniform_point(rng)), 0.42, 1e-3);
}

TEST(EvalNet, GradientMatchesFiniteDifferences) {
    EvalNet net(7);
    Rng rng(8);
    for (auto& w : net.params()) w = rng.uniform(-0.5, 0.5);
    std::vector<Point> xs;
    std::vector<double> ys;
    for (int i = 0; i < 4; ++i) {
        xs.push_back(uniform_point(rng));
        ys.push_back(rng.uniform());
    }
    std::vector<double> grad;
    net.raw_loss(xs, ys, &grad);
    ASSERT_EQ(grad.size(), EvalNet::kParamCount);
    for (int k = 0; k < 25; ++k) {
        const std::size_t w = rng.index(EvalNet::kParamCount);
        const double orig = net.params()[w];
        net.params()[w] = orig + 1e-5;
        const double up = net.raw_loss(xs, ys, nullptr);
        net.params()[w] = orig - 1e-5;
        const double down = net.raw_loss(xs, ys, nullptr);
        net.params()[w] = orig;
        const double fd = (up - down) / 2e-5;
        EXPECT_LE(std::abs(fd - grad[w]), 1e-4 * std::max({std::abs(fd), std::abs(grad[w]), 1e-6})) << "weight " << w;
    }
}

TEST(EvalNet, LearnsARandomQuadratic) {
    Rng rng(100);
    double A[7][7] = {};
    double M[7][7];
    double b[7];
    for (auto& r : M)
        for (auto& v : r) v = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
            for (int k = 0; k < 7; ++k) A[i][j] += M[k][i] * M[k][j] / 7.0;
    for (auto& v : b) v = rng.uniform(-1.0, 1.0);
    auto f = [&](const Point& x) {
        double s = 0.0;
        for (int i = 0; i < 7; ++i) {
            s += b[i] * x[i];
            for (int j = 0; j < 7; ++j) s += A[i][j] * x[i] * x[j];
        }
        return s;
    };
    std::vector<Sample> train;
    std::vector<Sample> test;
    for (int i = 0; i < 200; ++i) {
        const auto p = uniform_point(rng);
        train.push_back({p, f(p)});
    }
    for (int i = 0; i < 500; ++i) {
        const auto p = uniform_point(rng);
        test.push_back({p, f(p)});
    }
    EvalNet net(1);
    train_eval_net(net, train, 2000, 3);
    double mean = 0.0;
    for (const auto& s : test) mean += s.loss;
    mean /= test.size();
    double var = 0.0;
    double mse = 0.0;
    for (const auto& s : test) {
        var += (s.loss - mean) * (s.loss - mean);
        const double e = net.predict(s.point) - s.loss;
        mse += e * e;
    }
    EXPECT_LT(mse / var, 0.05);
}

TEST(EvalNet, DeterministicTraining) {
    std::vector<Sample> samples;
    Rng rng(9);
    for (int i = 0; i < 20; ++i) {
        const auto p = uniform_point(rng);
        samples.push_back({p, p[0] * p[1]});
    }
    EvalNet a(1);
    EvalNet b(1);
    train_eval_net(a, samples, 50, 2);
    train_eval_net(b, samples, 50, 2);
    EXPECT_EQ(a.params(), b.params());
}

TEST(Optimizer, BudgetAccounting) {
    const auto train = toy_pairs(1, 120);
    const auto val = toy_pairs(2, 60);
    OptimizeOptions o;
    o.budget = 7;
    o.k = 4;
    o.steps = 4;
    o.seed = 11;
    o.surrogate_epochs = 50;
    o.refit_epochs = 5;
    std::size_t callbacks = 0;
    o.on_evaluation = [&](const HistoryEntry&) { ++callbacks; };
    const auto r = optimize(train, val, o);
    ASSERT_EQ(r.history.size(), 7u);
    EXPECT_EQ(callbacks, 7u);
    double best = r.history[0].loss;
    for (std::size_t i = 0; i < r.history.size(); ++i) {
        EXPECT_EQ(r.history[i].stage, i < 4 ? 1 : 2);
        EXPECT_EQ(r.history[i].hyper, gbdt::denormalize(r.history[i].point));
        best = std::min(best, r.history[i].loss);
    }
    EXPECT_EQ(r.best_loss, best);
    EXPECT_EQ(r.training_seed, evaluation_seed(11));
    EXPECT_EQ(true_loss(train, val, r.best, r.training_seed), r.best_loss);
}

TEST(Optimizer, StageOneOnlyWhenBudgetEqualsK) {
    OptimizeOptions o;
    o.budget = 3;
    o.k = 3;
    o.surrogate_epochs = 10;
    const auto r = optimize(toy_pairs(3, 80), toy_pairs(4, 40), o);
    EXPECT_EQ(r.history.size(), 3u);
    for (const auto& h : r.history) EXPECT_EQ(h.stage, 1);
}

TEST(Optimizer, RejectsSmallBudgets) {
    const auto d = toy_pairs(5, 40);
    OptimizeOptions o;
    o.budget = 3;
    o.k = 4;
    EXPECT_THROW(optimize(d, d, o), BudgetTooSmall);
    o.budget = 1;
    o.k = 1;
    EXPECT_THROW(optimize(d, d, o), BudgetTooSmall);
}
