#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clonescope/frontend/ast.hpp"

namespace clonescope::stree {

enum class StatementTreeKind {
    VariableDefinition,
    AssignmentOperation,
    ConditionalBlock,
    ControlLoop,
    FunctionCall,
    OtherOperation,
};

inline constexpr std::size_t kStatementKindCount = 6;

std::string_view kind_name(StatementTreeKind kind) noexcept;
std::optional<StatementTreeKind> kind_from_name(std::string_view name) noexcept;

/// Subtree rooted at one top-level statement of a function body. Conditionals
/// and loops own their whole block; nothing nested inside them is emitted on
/// its own.
struct StatementTree {
    StatementTreeKind kind = StatementTreeKind::OtherOperation;
    AstNode root;
    SourceSpan span;          ///< equals root.span
    std::size_t index = 0;    ///< position within the function
    std::string function_id;  ///< qualified name of the owning function
};

/// Type of a statement, decided by its outermost syntactic structure.
/// OtherOperation is the fallback for anything not matched.
StatementTreeKind classify_statement(const AstNode& stmt) noexcept;

/// One tree per top-level statement of the body, in source order.
std::vector<StatementTree> decompose(const FunctionAst& fn);

using KindCounts = std::array<std::size_t, kStatementKindCount>;

KindCounts kind_distribution(std::span<const StatementTree> trees) noexcept;

/// Lines of the function body that carry at least one token, excluding the
/// body's own braces. Computed from the token stream, not from the trees.
std::vector<int> executable_lines(const FunctionAst& fn);

}  // namespace clonescope::stree
