#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clonescope/frontend/span.hpp"

namespace clonescope {

enum class NodeKind {
    // declarations
    SourceUnit,
    ContractDefinition,
    InheritanceSpecifier,
    FunctionDefinition,
    ModifierDefinition,
    ParameterList,
    Parameter,
    ModifierInvocation,
    FunctionAttribute,
    StateVariableDeclaration,
    EventDefinition,
    StructDefinition,
    EnumDefinition,
    UsingForDirective,
    // statements
    Block,
    VariableDeclarationStatement,
    ExpressionStatement,
    IfStatement,
    ForStatement,
    WhileStatement,
    ReturnStatement,
    EmitStatement,
    RevertStatement,
    BreakStatement,
    ContinueStatement,
    ThrowStatement,
    PlaceholderStatement,
    InlineAssembly,
    // expressions
    Assignment,
    BinaryOperation,
    UnaryOperation,
    Operator,
    Conditional,
    FunctionCall,
    ArgumentList,
    MemberAccess,
    IndexAccess,
    NewExpression,
    TupleExpression,
    Identifier,
    NumberLiteral,
    StringLiteral,
    BoolLiteral,
    Unit,
    // types
    ElementaryTypeName,
    UserDefinedTypeName,
    Mapping,
    ArrayTypeName,
    DataLocation,
};

inline constexpr int kNodeKindCount = static_cast<int>(NodeKind::DataLocation) + 1;

std::string_view node_kind_name(NodeKind kind) noexcept;
std::optional<NodeKind> node_kind_from_name(std::string_view name) noexcept;

struct AstNode {
    NodeKind kind = NodeKind::Block;
    std::optional<std::string> value;
    std::vector<AstNode> children;
    SourceSpan span;

    bool operator==(const AstNode&) const = default;

    std::size_t size() const noexcept {
        std::size_t n = 1;
        for (const auto& c : children) n += c.size();
        return n;
    }

    /// Post-order walk.
    template <class F>
    void visit_post_order(F&& fn) const {
        for (const auto& c : children) c.visit_post_order(fn);
        fn(*this);
    }
};

enum class FunctionKind { Function, Constructor, Modifier, Fallback, Receive };

std::string_view function_kind_name(FunctionKind kind) noexcept;

struct FunctionAst {
    std::string name;
    FunctionKind kind = FunctionKind::Function;
    std::vector<std::pair<std::string, std::string>> params;  ///< (name, type)
    AstNode body;                                             ///< always a Block
    std::string source;                                       ///< full definition text
    std::string contract_name;                                ///< empty for free functions
    SourceSpan span;                                          ///< full definition

    std::string qualified_name() const {
        return contract_name.empty() ? name : contract_name + "." + name;
    }
};

}  // namespace clonescope
