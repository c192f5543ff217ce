#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include <json.hpp>

namespace clonescope::gbdt {

/// Tunable knobs of the boosted-tree classifier.
struct HyperPoint {
    int num_leaves = 31;
    int max_depth = 8;
    double learning_rate = 0.1;
    int num_rounds = 100;
    int min_samples_leaf = 20;
    double feature_fraction = 1.0;
    double bagging_fraction = 1.0;

    bool operator==(const HyperPoint&) const = default;
};

inline constexpr std::size_t kHyperDim = 7;

/// Image of a HyperPoint in the unit cube, one coordinate per field in
/// declaration order. learning_rate is mapped on a log scale.
using UnitPoint = std::array<double, kHyperDim>;

struct HyperBounds {
    double lo;
    double hi;
    bool integer;
    bool log_scale;
};

const std::array<HyperBounds, kHyperDim>& hyper_bounds() noexcept;
std::string_view hyper_field_name(std::size_t i) noexcept;

UnitPoint normalize(const HyperPoint& h);

/// Clamps every coordinate to [0, 1], maps back, and rounds integer fields
/// half-up.
HyperPoint denormalize(const UnitPoint& u);

/// Clamps each field to its bounds.
HyperPoint clamp(const HyperPoint& h);

/// Throws std::invalid_argument if any field is outside its valid domain
/// (num_leaves >= 2, max_depth >= 1, num_rounds >= 1, min_samples_leaf >= 1,
/// rates in (0, 1]).
void validate(const HyperPoint& h);

nlohmann::ordered_json to_json(const HyperPoint& h);
/// Accepts either the bare object or a document with a "hyper" member.
HyperPoint hyper_from_json(const nlohmann::ordered_json& j);

}  // namespace clonescope::gbdt
