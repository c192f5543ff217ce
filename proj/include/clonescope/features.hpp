#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "clonescope/frontend/ast.hpp"
#include "clonescope/statement_tree.hpp"

namespace clonescope::features {

enum class NodeCategory {
    ArithmeticOperator,
    MemberVariable,
    Value,
    Identifier,
    Unit,
    DataType,
    CodeConstructs,
};

inline constexpr std::size_t kCategoryCount = 7;

std::string_view category_name(NodeCategory c) noexcept;
/// Long form used in importance tables, e.g. "Data type node feature".
std::string_view category_title(NodeCategory c) noexcept;

/// Total over NodeKind.
NodeCategory categorize_node(const AstNode& node) noexcept;

/// Token a node contributes to its category bag. Identifiers collapse to "ID";
/// pure statement wrappers (Block, ExpressionStatement,
/// VariableDeclarationStatement) contribute nothing.
std::optional<std::string> canonical_token(const AstNode& node);

struct FeatureSet {
    std::array<std::vector<std::string>, kCategoryCount> bags;  ///< post-order
    std::size_t tree_size = 0;
    stree::StatementTreeKind kind = stree::StatementTreeKind::OtherOperation;

    const std::vector<std::string>& bag(NodeCategory c) const {
        return bags[static_cast<std::size_t>(c)];
    }
};

FeatureSet extract_features(const AstNode& root, stree::StatementTreeKind kind);
FeatureSet extract_features(const stree::StatementTree& tree);

/// Layout: for each category c (in enum order) three components at 3c..3c+2:
/// multiset Jaccard, |size difference| / max size, min size / max size.
/// Then kind match, tree-size ratio, log(1 + size_a + size_b).
inline constexpr std::size_t kPairDim = 24;
inline constexpr std::size_t kKindMatchIndex = 21;
inline constexpr std::size_t kSizeRatioIndex = 22;
inline constexpr std::size_t kLogSizeIndex = 23;

using PairFeatureVector = std::array<double, kPairDim>;

/// Symmetric in its arguments, component for component.
PairFeatureVector pair_features(const FeatureSet& a, const FeatureSet& b);

/// sum_t min(a_t, b_t) / sum_t max(a_t, b_t); 1 when both bags are empty.
double multiset_jaccard(std::span<const std::string> a, std::span<const std::string> b);

std::string feature_name(std::size_t index);
/// Category owning a vector component, or nullopt for the three structural ones.
std::optional<NodeCategory> feature_category(std::size_t index) noexcept;

/// {kind, size, bags:{category:[token,...]}} with tokens sorted.
nlohmann::ordered_json feature_set_to_json(const FeatureSet& fs);

}  // namespace clonescope::features
