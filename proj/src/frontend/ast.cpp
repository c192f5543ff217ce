#include "clonescope/frontend/ast.hpp"

#include <array>

namespace clonescope {

namespace {

constexpr std::array<std::string_view, kNodeKindCount> kNames = {
    "SourceUnit",
    "ContractDefinition",
    "InheritanceSpecifier",
    "FunctionDefinition",
    "ModifierDefinition",
    "ParameterList",
    "Parameter",
    "ModifierInvocation",
    "FunctionAttribute",
    "StateVariableDeclaration",
    "EventDefinition",
    "StructDefinition",
    "EnumDefinition",
    "UsingForDirective",
    "Block",
    "VariableDeclarationStatement",
    "ExpressionStatement",
    "IfStatement",
    "ForStatement",
    "WhileStatement",
    "ReturnStatement",
    "EmitStatement",
    "RevertStatement",
    "BreakStatement",
    "ContinueStatement",
    "ThrowStatement",
    "PlaceholderStatement",
    "InlineAssembly",
    "Assignment",
    "BinaryOperation",
    "UnaryOperation",
    "Operator",
    "Conditional",
    "FunctionCall",
    "ArgumentList",
    "MemberAccess",
    "IndexAccess",
    "NewExpression",
    "TupleExpression",
    "Identifier",
    "NumberLiteral",
    "StringLiteral",
    "BoolLiteral",
    "Unit",
    "ElementaryTypeName",
    "UserDefinedTypeName",
    "Mapping",
    "ArrayTypeName",
    "DataLocation",
};

}  // namespace

std::string_view node_kind_name(NodeKind kind) noexcept {
    return kNames[static_cast<std::size_t>(kind)];
}

std::optional<NodeKind> node_kind_from_name(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == name) return static_cast<NodeKind>(i);
    return std::nullopt;
}

std::string_view function_kind_name(FunctionKind kind) noexcept {
    switch (kind) {
        case FunctionKind::Function: return "function";
        case FunctionKind::Constructor: return "constructor";
        case FunctionKind::Modifier: return "modifier";
        case FunctionKind::Fallback: return "fallback";
        case FunctionKind::Receive: return "receive";
    }
    return "function";
}

}  // namespace clonescope
