#pragma once

#include <string_view>
#include <vector>

#include "clonescope/frontend/ast.hpp"

namespace clonescope::frontend {

struct ParseResult {
    AstNode unit;                         ///< SourceUnit
    std::vector<FunctionAst> functions;   ///< every function-like definition with a body, in order
};

/// Parses a whole file of the supported Solidity subset.
ParseResult parse_source(std::string_view source);

/// One FunctionAst per function, constructor, modifier, fallback or receive
/// definition that has a body, in source order. Declarations without a body
/// (interfaces, abstract functions) are skipped.
std::vector<FunctionAst> parse_contract(std::string_view source);

/// Parses text holding exactly one function definition, either bare or
/// wrapped in a contract. Throws ParseError otherwise.
FunctionAst parse_function(std::string_view source);

/// Looks up a function by name (or Contract.name) in a parsed file.
/// Throws clonescope::Error when absent or ambiguous.
const FunctionAst& find_function(const std::vector<FunctionAst>& functions, std::string_view name);

}  // namespace clonescope::frontend
