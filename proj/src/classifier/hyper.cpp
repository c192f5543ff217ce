#include "clonescope/classifier/hyper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace clonescope::gbdt {

namespace {

constexpr std::array<std::string_view, kHyperDim> kNames = {
    "num_leaves", "max_depth", "learning_rate", "num_rounds",
    "min_samples_leaf", "feature_fraction", "bagging_fraction",
};

std::array<double, kHyperDim> as_array(const HyperPoint& h) {
    return {static_cast<double>(h.num_leaves), static_cast<double>(h.max_depth), h.learning_rate,
            static_cast<double>(h.num_rounds), static_cast<double>(h.min_samples_leaf),
            h.feature_fraction, h.bagging_fraction};
}

HyperPoint from_array(const std::array<double, kHyperDim>& v) {
    const auto i = [](double x) { return static_cast<int>(std::floor(x + 0.5)); };
    HyperPoint h;
    h.num_leaves = i(v[0]);
    h.max_depth = i(v[1]);
    h.learning_rate = v[2];
    h.num_rounds = i(v[3]);
    h.min_samples_leaf = i(v[4]);
    h.feature_fraction = v[5];
    h.bagging_fraction = v[6];
    return h;
}

}  // namespace

const std::array<HyperBounds, kHyperDim>& hyper_bounds() noexcept {
    static const std::array<HyperBounds, kHyperDim> b = {{
        {2, 64, true, false},
        {1, 12, true, false},
        {0.01, 1.0, false, true},
        {5, 200, true, false},
        {1, 100, true, false},
        {0.1, 1.0, false, false},
        {0.1, 1.0, false, false},
    }};
    return b;
}

std::string_view hyper_field_name(std::size_t i) noexcept { return i < kHyperDim ? kNames[i] : "?"; }

UnitPoint normalize(const HyperPoint& h) {
    const auto v = as_array(clamp(h));
    UnitPoint u{};
    for (std::size_t i = 0; i < kHyperDim; ++i) {
        const auto& b = hyper_bounds()[i];
        if (b.log_scale)
            u[i] = (std::log(v[i]) - std::log(b.lo)) / (std::log(b.hi) - std::log(b.lo));
        else
            u[i] = (v[i] - b.lo) / (b.hi - b.lo);
    }
    return u;
}

HyperPoint denormalize(const UnitPoint& u) {
    std::array<double, kHyperDim> v{};
    for (std::size_t i = 0; i < kHyperDim; ++i) {
        const auto& b = hyper_bounds()[i];
        const double x = std::clamp(u[i], 0.0, 1.0);
        if (b.log_scale)
            v[i] = std::exp(std::log(b.lo) + x * (std::log(b.hi) - std::log(b.lo)));
        else
            v[i] = b.lo + x * (b.hi - b.lo);
        v[i] = std::clamp(v[i], b.lo, b.hi);
    }
    return from_array(v);
}

HyperPoint clamp(const HyperPoint& h) {
    auto v = as_array(h);
    for (std::size_t i = 0; i < kHyperDim; ++i) v[i] = std::clamp(v[i], hyper_bounds()[i].lo, hyper_bounds()[i].hi);
    return from_array(v);
}

void validate(const HyperPoint& h) {
    auto fail = [](std::string_view field) {
        throw std::invalid_argument("hyperparameter out of domain: " + std::string(field));
    };
    if (h.num_leaves < 2) fail("num_leaves");
    if (h.max_depth < 1) fail("max_depth");
    if (!(h.learning_rate > 0.0 && h.learning_rate <= 1.0)) fail("learning_rate");
    if (h.num_rounds < 1) fail("num_rounds");
    if (h.min_samples_leaf < 1) fail("min_samples_leaf");
    if (!(h.feature_fraction > 0.0 && h.feature_fraction <= 1.0)) fail("feature_fraction");
    if (!(h.bagging_fraction > 0.0 && h.bagging_fraction <= 1.0)) fail("bagging_fraction");
}

nlohmann::ordered_json to_json(const HyperPoint& h) {
    return {
        {"num_leaves", h.num_leaves},
        {"max_depth", h.max_depth},
        {"learning_rate", h.learning_rate},
        {"num_rounds", h.num_rounds},
        {"min_samples_leaf", h.min_samples_leaf},
        {"feature_fraction", h.feature_fraction},
        {"bagging_fraction", h.bagging_fraction},
    };
}

HyperPoint hyper_from_json(const nlohmann::ordered_json& doc) {
    const auto& j = doc.contains("hyper") ? doc.at("hyper") : doc;
    HyperPoint h;
    h.num_leaves = j.value("num_leaves", h.num_leaves);
    h.max_depth = j.value("max_depth", h.max_depth);
    h.learning_rate = j.value("learning_rate", h.learning_rate);
    h.num_rounds = j.value("num_rounds", h.num_rounds);
    h.min_samples_leaf = j.value("min_samples_leaf", h.min_samples_leaf);
    h.feature_fraction = j.value("feature_fraction", h.feature_fraction);
    h.bagging_fraction = j.value("bagging_fraction", h.bagging_fraction);
    validate(h);
    return h;
}

}  // namespace clonescope::gbdt
