#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "clonescope/classifier/hyper.hpp"
#include "clonescope/features.hpp"

namespace clonescope::gbdt {

inline constexpr std::size_t kNumFeatures = features::kPairDim;

struct LabeledPair {
    features::PairFeatureVector x{};
    int y = 0;
};

/// Internal nodes route x to `left` when x[feature] <= threshold.
struct TreeNode {
    int feature = -1;  ///< -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;  ///< leaf output before learning-rate scaling
    int depth = 0;

    bool is_leaf() const noexcept { return feature < 0; }
};

struct RegressionTree {
    std::vector<TreeNode> nodes;  ///< nodes[0] is the root

    double predict(const double* x) const noexcept;
    int leaf_count() const noexcept;
    int depth() const noexcept;
};

struct GbdtModel {
    HyperPoint hyper;
    double base_score = 0.0;
    std::vector<RegressionTree> trees;
    std::array<std::uint64_t, kNumFeatures> split_counts{};

    /// Raw margin using only the first `n_trees` trees.
    double raw_score(std::span<const double> x, std::size_t n_trees) const;
    double raw_score(std::span<const double> x) const { return raw_score(x, trees.size()); }
};

/// Fits hyper.num_rounds trees to the logistic loss. Deterministic in
/// (data, hyper, seed). Throws DegenerateData when a class is missing and
/// std::invalid_argument for an out-of-domain HyperPoint.
GbdtModel train(std::span<const LabeledPair> data, const HyperPoint& hyper, std::uint64_t seed);

/// In (0, 1). Throws DimensionMismatch unless x has kNumFeatures entries.
double predict_proba(const GbdtModel& m, std::span<const double> x);
double predict_proba(const GbdtModel& m, const features::PairFeatureVector& x);

/// Mean binary cross-entropy, evaluated from margins so it never overflows.
double cross_entropy(std::span<const LabeledPair> data, const GbdtModel& m);

/// Cross-entropy of the model truncated to each prefix of its trees;
/// element k uses the first k trees (element 0 is the base score alone).
std::vector<double> loss_curve(std::span<const LabeledPair> data, const GbdtModel& m);

double stable_log_loss(double margin, int y) noexcept;

struct FeatureImportance {
    std::array<double, kNumFeatures> per_feature{};  ///< sums to 1
    /// Per node category, the sum of its three components.
    std::array<double, features::kCategoryCount> per_category{};
    /// Share taken by kind_match, size ratio and log size sum together.
    double structural = 0.0;
};

/// Split-frequency weights. Throws ZeroSplits when the model never split.
FeatureImportance feature_importance(const GbdtModel& m);

/// Ranked "Rank | Feature | Weight" table over the seven categories, weights
/// renormalized among them; the structural share is listed after the table.
std::string importance_table(const FeatureImportance& fi);

}  // namespace clonescope::gbdt
