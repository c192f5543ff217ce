#include "clonescope/features.hpp"

#include <algorithm>
#include <cmath>

namespace clonescope::features {

namespace {

constexpr std::array<std::string_view, kCategoryCount> kCategoryNames = {
    "ArithmeticOperator", "MemberVariable", "Value", "Identifier", "Unit", "DataType", "CodeConstructs",
};

constexpr std::array<std::string_view, kCategoryCount> kCategoryTitles = {
    "Arithmetic operator node feature",
    "Member variable node feature",
    "Value node feature",
    "Identifier node feature",
    "Unit node feature",
    "Data type node feature",
    "Code constructs node feature",
};

constexpr std::array<std::string_view, 3> kComponentNames = {"jaccard", "size_diff", "size_ratio"};

double ratio(std::size_t a, std::size_t b) {
    const auto hi = std::max(a, b);
    return hi == 0 ? 1.0 : static_cast<double>(std::min(a, b)) / static_cast<double>(hi);
}

double normalized_diff(std::size_t a, std::size_t b) {
    const auto hi = std::max(a, b);
    return hi == 0 ? 0.0 : static_cast<double>(hi - std::min(a, b)) / static_cast<double>(hi);
}

}  // namespace

std::string_view category_name(NodeCategory c) noexcept { return kCategoryNames[static_cast<std::size_t>(c)]; }

std::string_view category_title(NodeCategory c) noexcept {
    return kCategoryTitles[static_cast<std::size_t>(c)];
}

NodeCategory categorize_node(const AstNode& node) noexcept {
    switch (node.kind) {
        case NodeKind::Operator:
            return NodeCategory::ArithmeticOperator;
        case NodeKind::MemberAccess:
            return NodeCategory::MemberVariable;
        case NodeKind::NumberLiteral:
        case NodeKind::StringLiteral:
        case NodeKind::BoolLiteral:
            return NodeCategory::Value;
        case NodeKind::Identifier:
            return NodeCategory::Identifier;
        case NodeKind::Unit:
            return NodeCategory::Unit;
        case NodeKind::ElementaryTypeName:
        case NodeKind::UserDefinedTypeName:
        case NodeKind::Mapping:
        case NodeKind::ArrayTypeName:
        case NodeKind::DataLocation:
            return NodeCategory::DataType;
        default:
            return NodeCategory::CodeConstructs;
    }
}

std::optional<std::string> canonical_token(const AstNode& node) {
    switch (node.kind) {
        case NodeKind::Block:
        case NodeKind::ExpressionStatement:
        case NodeKind::VariableDeclarationStatement:
            return std::nullopt;
        case NodeKind::Identifier:
            return std::string("ID");
        default:
            break;
    }
    if (categorize_node(node) == NodeCategory::CodeConstructs) return std::string(node_kind_name(node.kind));
    return node.value.value_or(std::string(node_kind_name(node.kind)));
}

FeatureSet extract_features(const AstNode& root, stree::StatementTreeKind kind) {
    FeatureSet fs;
    fs.kind = kind;
    root.visit_post_order([&](const AstNode& n) {
        ++fs.tree_size;
        if (auto tok = canonical_token(n)) fs.bags[static_cast<std::size_t>(categorize_node(n))].push_back(*tok);
    });
    return fs;
}

FeatureSet extract_features(const stree::StatementTree& tree) { return extract_features(tree.root, tree.kind); }

double multiset_jaccard(std::span<const std::string> a, std::span<const std::string> b) {
    if (a.empty() && b.empty()) return 1.0;
    std::vector<std::string_view> sa(a.begin(), a.end());
    std::vector<std::string_view> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::size_t inter = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < sa.size() && j < sb.size()) {
        if (sa[i] < sb[j]) {
            ++i;
        } else if (sb[j] < sa[i]) {
            ++j;
        } else {
            ++inter;
            ++i;
            ++j;
        }
    }
    // sum of max multiplicities = |a| + |b| - sum of min multiplicities
    const std::size_t uni = sa.size() + sb.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

PairFeatureVector pair_features(const FeatureSet& a, const FeatureSet& b) {
    PairFeatureVector v{};
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
        const auto& ba = a.bags[c];
        const auto& bb = b.bags[c];
        v[3 * c] = multiset_jaccard(ba, bb);
        v[3 * c + 1] = normalized_diff(ba.size(), bb.size());
        v[3 * c + 2] = ratio(ba.size(), bb.size());
    }
    v[kKindMatchIndex] = a.kind == b.kind ? 1.0 : 0.0;
    v[kSizeRatioIndex] = ratio(a.tree_size, b.tree_size);
    v[kLogSizeIndex] = std::log1p(static_cast<double>(a.tree_size + b.tree_size));
    return v;
}

std::string feature_name(std::size_t index) {
    if (index < 3 * kCategoryCount)
        return std::string(kCategoryNames[index / 3]) + "." + std::string(kComponentNames[index % 3]);
    switch (index) {
        case kKindMatchIndex: return "kind_match";
        case kSizeRatioIndex: return "tree_size_ratio";
        case kLogSizeIndex: return "log_tree_size_sum";
        default: return "feature_" + std::to_string(index);
    }
}

std::optional<NodeCategory> feature_category(std::size_t index) noexcept {
    if (index < 3 * kCategoryCount) return static_cast<NodeCategory>(index / 3);
    return std::nullopt;
}

nlohmann::ordered_json feature_set_to_json(const FeatureSet& fs) {
    nlohmann::ordered_json j;
    j["kind"] = stree::kind_name(fs.kind);
    j["size"] = fs.tree_size;
    nlohmann::ordered_json bags = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
        auto tokens = fs.bags[c];
        std::sort(tokens.begin(), tokens.end());
        bags[std::string(kCategoryNames[c])] = tokens;
    }
    j["bags"] = std::move(bags);
    return j;
}

}  // namespace clonescope::features
