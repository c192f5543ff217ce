#include "clonescope/classifier/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "clonescope/error.hpp"
#include "clonescope/rng.hpp"

namespace clonescope::gbdt {

namespace {

constexpr double kLambda = 1.0;

double sigmoid(double z) noexcept {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double leaf_objective(double g, double h) noexcept { return g * g / (h + kLambda); }

// Every distinct value of every feature gets its own bin, so scanning bins in
// order visits exactly the candidate thresholds of an exact greedy search.
struct BinnedData {
    std::array<std::vector<double>, kNumFeatures> values;        // sorted distinct values
    std::array<std::vector<std::uint32_t>, kNumFeatures> bin_of;  // per row
    std::array<std::size_t, kNumFeatures> offset{};
    std::size_t total_bins = 0;
};

BinnedData bin_data(std::span<const LabeledPair> data) {
    BinnedData b;
    const std::size_t n = data.size();
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
        auto& vals = b.values[f];
        vals.reserve(n);
        for (const auto& p : data) vals.push_back(p.x[f]);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        auto& bins = b.bin_of[f];
        bins.resize(n);
        for (std::size_t r = 0; r < n; ++r)
            bins[r] = static_cast<std::uint32_t>(std::lower_bound(vals.begin(), vals.end(), data[r].x[f]) - vals.begin());
        b.offset[f] = b.total_bins;
        b.total_bins += vals.size();
    }
    return b;
}

struct Split {
    double gain = 0.0;
    int feature = -1;
    std::uint32_t left_max_bin = 0;
    double threshold = 0.0;
};

struct PendingLeaf {
    int node = 0;
    std::vector<std::uint32_t> rows;
    double g = 0.0;
    double h = 0.0;
    Split split;
};

class TreeBuilder {
public:
    TreeBuilder(const BinnedData& bins, const std::vector<double>& grad, const std::vector<double>& hess,
                const HyperPoint& hyper, const std::vector<int>& features)
        : bins_(bins), grad_(grad), hess_(hess), hyper_(hyper), features_(features),
          hg_(bins.total_bins), hh_(bins.total_bins), hc_(bins.total_bins) {}

    RegressionTree build(std::vector<std::uint32_t> rows, std::array<std::uint64_t, kNumFeatures>& split_counts) {
        RegressionTree tree;
        tree.nodes.push_back(TreeNode{});
        std::vector<PendingLeaf> leaves;
        leaves.push_back(make_leaf(0, 0, std::move(rows)));
        int leaf_count = 1;

        while (leaf_count < hyper_.num_leaves) {
            // best gain first; equal gains go to the older (lower id) node
            std::size_t best = leaves.size();
            for (std::size_t i = 0; i < leaves.size(); ++i) {
                if (leaves[i].split.feature < 0) continue;
                if (best == leaves.size() || leaves[i].split.gain > leaves[best].split.gain ||
                    (leaves[i].split.gain == leaves[best].split.gain && leaves[i].node < leaves[best].node))
                    best = i;
            }
            if (best == leaves.size()) break;

            PendingLeaf leaf = std::move(leaves[best]);
            leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(best));

            const auto& s = leaf.split;
            const auto& col = bins_.bin_of[static_cast<std::size_t>(s.feature)];
            std::vector<std::uint32_t> left_rows;
            std::vector<std::uint32_t> right_rows;
            for (auto r : leaf.rows) (col[r] <= s.left_max_bin ? left_rows : right_rows).push_back(r);

            const int depth = tree.nodes[static_cast<std::size_t>(leaf.node)].depth + 1;
            const int left_id = static_cast<int>(tree.nodes.size());
            const int right_id = left_id + 1;
            tree.nodes.push_back(TreeNode{.depth = depth});
            tree.nodes.push_back(TreeNode{.depth = depth});
            auto& parent = tree.nodes[static_cast<std::size_t>(leaf.node)];
            parent.feature = s.feature;
            parent.threshold = s.threshold;
            parent.left = left_id;
            parent.right = right_id;
            ++split_counts[static_cast<std::size_t>(s.feature)];

            leaves.push_back(make_leaf(left_id, depth, std::move(left_rows)));
            leaves.push_back(make_leaf(right_id, depth, std::move(right_rows)));
            ++leaf_count;
        }

        for (const auto& leaf : leaves)
            tree.nodes[static_cast<std::size_t>(leaf.node)].value = -leaf.g / (leaf.h + kLambda);
        return tree;
    }

private:
    PendingLeaf make_leaf(int node, int depth, std::vector<std::uint32_t> rows) {
        PendingLeaf leaf;
        leaf.node = node;
        leaf.rows = std::move(rows);
        for (auto r : leaf.rows) {
            leaf.g += grad_[r];
            leaf.h += hess_[r];
        }
        const auto min_leaf = static_cast<std::size_t>(hyper_.min_samples_leaf);
        if (depth < hyper_.max_depth && leaf.rows.size() >= 2 * min_leaf) leaf.split = find_split(leaf);
        return leaf;
    }

    Split find_split(const PendingLeaf& leaf) {
        Split best;
        const double parent_obj = leaf_objective(leaf.g, leaf.h);
        const auto min_leaf = static_cast<std::uint32_t>(hyper_.min_samples_leaf);
        const auto total = static_cast<std::uint32_t>(leaf.rows.size());

        for (int f : features_) {
            const auto fi = static_cast<std::size_t>(f);
            const std::size_t off = bins_.offset[fi];
            const std::size_t nb = bins_.values[fi].size();
            if (nb < 2) continue;
            std::fill_n(hg_.begin() + static_cast<std::ptrdiff_t>(off), nb, 0.0);
            std::fill_n(hh_.begin() + static_cast<std::ptrdiff_t>(off), nb, 0.0);
            std::fill_n(hc_.begin() + static_cast<std::ptrdiff_t>(off), nb, 0U);
            const auto& col = bins_.bin_of[fi];
            for (auto r : leaf.rows) {
                const std::size_t b = off + col[r];
                hg_[b] += grad_[r];
                hh_[b] += hess_[r];
                ++hc_[b];
            }

            double gl = 0.0;
            double hl = 0.0;
            std::uint32_t cl = 0;
            std::size_t prev = nb;  // last non-empty bin seen
            for (std::size_t b = 0; b < nb; ++b) {
                const std::size_t k = off + b;
                if (hc_[k] == 0) continue;
                if (prev != nb && cl >= min_leaf && total - cl >= min_leaf) {
                    const double gain = leaf_objective(gl, hl) + leaf_objective(leaf.g - gl, leaf.h - hl) - parent_obj;
                    if (gain > best.gain) {
                        const double lo = bins_.values[fi][prev];
                        const double hi = bins_.values[fi][b];
                        double thr = lo + (hi - lo) * 0.5;
                        if (!(thr >= lo && thr < hi)) thr = lo;
                        best = Split{gain, f, static_cast<std::uint32_t>(prev), thr};
                    }
                }
                gl += hg_[k];
                hl += hh_[k];
                cl += hc_[k];
                prev = b;
            }
        }
        return best;
    }

    const BinnedData& bins_;
    const std::vector<double>& grad_;
    const std::vector<double>& hess_;
    const HyperPoint& hyper_;
    const std::vector<int>& features_;
    std::vector<double> hg_;
    std::vector<double> hh_;
    std::vector<std::uint32_t> hc_;
};

}  // namespace

double RegressionTree::predict(const double* x) const noexcept {
    std::size_t i = 0;
    while (!nodes[i].is_leaf()) {
        const auto& n = nodes[i];
        i = static_cast<std::size_t>(x[n.feature] <= n.threshold ? n.left : n.right);
    }
    return nodes[i].value;
}

int RegressionTree::leaf_count() const noexcept {
    return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

int RegressionTree::depth() const noexcept {
    int d = 0;
    for (const auto& n : nodes) d = std::max(d, n.depth);
    return d;
}

double GbdtModel::raw_score(std::span<const double> x, std::size_t n_trees) const {
    if (x.size() != kNumFeatures) throw DimensionMismatch(kNumFeatures, x.size());
    double z = 0.0;
    const std::size_t n = std::min(n_trees, trees.size());
    for (std::size_t t = 0; t < n; ++t) z += trees[t].predict(x.data());
    return base_score + hyper.learning_rate * z;
}

GbdtModel train(std::span<const LabeledPair> data, const HyperPoint& hyper, std::uint64_t seed) {
    validate(hyper);
    const std::size_t n = data.size();
    std::size_t positives = 0;
    for (const auto& p : data) {
        if (p.y != 0 && p.y != 1) throw DegenerateData("label must be 0 or 1");
        positives += static_cast<std::size_t>(p.y);
    }
    if (positives == 0 || positives == n) throw DegenerateData("training data must contain both labels");

    GbdtModel model;
    model.hyper = hyper;
    const double rate = static_cast<double>(positives) / static_cast<double>(n);
    model.base_score = std::log(rate / (1.0 - rate));

    const BinnedData bins = bin_data(data);
    std::vector<double> margin(n, model.base_score);
    std::vector<double> grad(n);
    std::vector<double> hess(n);
    Rng rng(substream(seed, "gbdt"));

    const auto n_features = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(hyper.feature_fraction * static_cast<double>(kNumFeatures))));
    const auto n_rows = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(hyper.bagging_fraction * static_cast<double>(n))));

    std::vector<int> feature_pool(kNumFeatures);
    std::vector<std::uint32_t> row_pool(n);
    model.trees.reserve(static_cast<std::size_t>(hyper.num_rounds));

    for (int round = 0; round < hyper.num_rounds; ++round) {
        for (std::size_t r = 0; r < n; ++r) {
            const double p = sigmoid(margin[r]);
            grad[r] = p - static_cast<double>(data[r].y);
            hess[r] = p * (1.0 - p);
        }

        std::iota(feature_pool.begin(), feature_pool.end(), 0);
        for (std::size_t i = 0; i < n_features && n_features < kNumFeatures; ++i)
            std::swap(feature_pool[i], feature_pool[i + rng.index(kNumFeatures - i)]);
        std::vector<int> features(feature_pool.begin(), feature_pool.begin() + static_cast<std::ptrdiff_t>(n_features));
        std::sort(features.begin(), features.end());

        std::iota(row_pool.begin(), row_pool.end(), 0U);
        for (std::size_t i = 0; i < n_rows && n_rows < n; ++i)
            std::swap(row_pool[i], row_pool[i + rng.index(n - i)]);
        std::vector<std::uint32_t> rows(row_pool.begin(), row_pool.begin() + static_cast<std::ptrdiff_t>(n_rows));
        std::sort(rows.begin(), rows.end());

        TreeBuilder builder(bins, grad, hess, hyper, features);
        RegressionTree tree = builder.build(std::move(rows), model.split_counts);
        for (std::size_t r = 0; r < n; ++r) margin[r] += hyper.learning_rate * tree.predict(data[r].x.data());
        model.trees.push_back(std::move(tree));
    }
    return model;
}

double predict_proba(const GbdtModel& m, std::span<const double> x) {
    const double p = sigmoid(m.raw_score(x));
    return std::clamp(p, 0x1p-60, 1.0 - 0x1p-53);
}

double predict_proba(const GbdtModel& m, const features::PairFeatureVector& x) {
    return predict_proba(m, std::span<const double>(x.data(), x.size()));
}

double stable_log_loss(double margin, int y) noexcept {
    // -[y log s(z) + (1-y) log(1-s(z))] = softplus(z) - y z
    const double softplus = std::max(margin, 0.0) + std::log1p(std::exp(-std::abs(margin)));
    return softplus - (y != 0 ? margin : 0.0);
}

double cross_entropy(std::span<const LabeledPair> data, const GbdtModel& m) {
    if (data.empty()) throw DegenerateData("cross_entropy of empty data");
    double sum = 0.0;
    for (const auto& p : data) sum += stable_log_loss(m.raw_score(p.x), p.y);
    return sum / static_cast<double>(data.size());
}

std::vector<double> loss_curve(std::span<const LabeledPair> data, const GbdtModel& m) {
    if (data.empty()) throw DegenerateData("loss_curve of empty data");
    std::vector<double> tree_sum(data.size(), 0.0);
    std::vector<double> curve;
    curve.reserve(m.trees.size() + 1);
    for (std::size_t k = 0; k <= m.trees.size(); ++k) {
        if (k > 0)
            for (std::size_t r = 0; r < data.size(); ++r) tree_sum[r] += m.trees[k - 1].predict(data[r].x.data());
        double sum = 0.0;
        for (std::size_t r = 0; r < data.size(); ++r)
            sum += stable_log_loss(m.base_score + m.hyper.learning_rate * tree_sum[r], data[r].y);
        curve.push_back(sum / static_cast<double>(data.size()));
    }
    return curve;
}

FeatureImportance feature_importance(const GbdtModel& m) {
    const std::uint64_t total = std::accumulate(m.split_counts.begin(), m.split_counts.end(), std::uint64_t{0});
    if (total == 0) throw ZeroSplits();
    FeatureImportance fi;
    for (std::size_t f = 0; f < kNumFeatures; ++f) {
        fi.per_feature[f] = static_cast<double>(m.split_counts[f]) / static_cast<double>(total);
        if (auto c = features::feature_category(f))
            fi.per_category[static_cast<std::size_t>(*c)] += fi.per_feature[f];
        else
            fi.structural += fi.per_feature[f];
    }
    return fi;
}

std::string importance_table(const FeatureImportance& fi) {
    double category_total = 0.0;
    for (double w : fi.per_category) category_total += w;
    std::vector<std::size_t> order(features::kCategoryCount);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fi.per_category[a] > fi.per_category[b]; });

    std::ostringstream out;
    out << "Rank | Feature | Weight\n";
    char buf[32];
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        const double w = category_total > 0 ? fi.per_category[order[rank]] / category_total : 0.0;
        std::snprintf(buf, sizeof buf, "%.5f", w);
        out << rank + 1 << " | " << features::category_title(static_cast<features::NodeCategory>(order[rank]))
            << " | " << buf << "\n";
    }
    std::snprintf(buf, sizeof buf, "%.5f", fi.structural);
    out << "structural features (kind match, size ratio, log size): " << buf << " of all splits\n";
    return out.str();
}

}  // namespace clonescope::gbdt
