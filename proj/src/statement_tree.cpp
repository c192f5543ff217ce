#include "clonescope/statement_tree.hpp"

#include <algorithm>
#include <array>

#include "clonescope/frontend/token.hpp"

namespace clonescope::stree {

namespace {

constexpr std::array<std::string_view, kStatementKindCount> kKindNames = {
    "VariableDefinition", "AssignmentOperation", "ConditionalBlock",
    "ControlLoop",        "FunctionCall",        "OtherOperation",
};

StatementTreeKind classify_expression(const AstNode& expr) noexcept {
    switch (expr.kind) {
        case NodeKind::Assignment:
            return StatementTreeKind::AssignmentOperation;
        case NodeKind::UnaryOperation:
            // i++ / --i update a variable in place
            if (expr.value == "++" || expr.value == "--") return StatementTreeKind::AssignmentOperation;
            return StatementTreeKind::OtherOperation;
        case NodeKind::FunctionCall:
            return StatementTreeKind::FunctionCall;
        default:
            return StatementTreeKind::OtherOperation;
    }
}

}  // namespace

std::string_view kind_name(StatementTreeKind kind) noexcept {
    return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<StatementTreeKind> kind_from_name(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kKindNames.size(); ++i)
        if (kKindNames[i] == name) return static_cast<StatementTreeKind>(i);
    return std::nullopt;
}

StatementTreeKind classify_statement(const AstNode& stmt) noexcept {
    switch (stmt.kind) {
        case NodeKind::VariableDeclarationStatement:
            return StatementTreeKind::VariableDefinition;
        case NodeKind::ExpressionStatement:
            return stmt.children.empty() ? StatementTreeKind::OtherOperation
                                         : classify_expression(stmt.children.front());
        case NodeKind::IfStatement:
            return StatementTreeKind::ConditionalBlock;
        case NodeKind::ForStatement:
        case NodeKind::WhileStatement:
            return StatementTreeKind::ControlLoop;
        default:
            return StatementTreeKind::OtherOperation;
    }
}

std::vector<StatementTree> decompose(const FunctionAst& fn) {
    std::vector<StatementTree> trees;
    trees.reserve(fn.body.children.size());
    const std::string id = fn.qualified_name();
    for (const AstNode& stmt : fn.body.children) {
        StatementTree tree;
        tree.kind = classify_statement(stmt);
        tree.root = stmt;
        tree.span = stmt.span;
        tree.index = trees.size();
        tree.function_id = id;
        trees.push_back(std::move(tree));
    }
    return trees;
}

KindCounts kind_distribution(std::span<const StatementTree> trees) noexcept {
    KindCounts counts{};
    for (const auto& t : trees) ++counts[static_cast<std::size_t>(t.kind)];
    return counts;
}

std::vector<int> executable_lines(const FunctionAst& fn) {
    const auto tokens = frontend::tokenize(fn.source);
    const int line_shift = fn.span.start_line - 1;
    const int col_shift = fn.span.start_col - 1;
    auto absolute = [&](const SourceSpan& s) {
        SourceSpan out = s;
        if (out.start_line == 1) out.start_col += col_shift;
        if (out.end_line == 1) out.end_col += col_shift;
        out.start_line += line_shift;
        out.end_line += line_shift;
        return out;
    };
    const SourceSpan& body = fn.body.span;
    auto strictly_inside = [&](const SourceSpan& s) {
        const bool after_open = s.start_line > body.start_line ||
                                (s.start_line == body.start_line && s.start_col > body.start_col);
        const bool before_close =
            s.end_line < body.end_line || (s.end_line == body.end_line && s.end_col < body.end_col);
        return after_open && before_close;
    };
    std::vector<int> lines;
    for (const auto& tok : tokens) {
        const SourceSpan s = absolute(tok.span);
        if (!strictly_inside(s)) continue;
        for (int l = s.start_line; l <= s.end_line; ++l) lines.push_back(l);
    }
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    return lines;
}

}  // namespace clonescope::stree
