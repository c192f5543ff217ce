#include <gtest/gtest.h>

#include <string>

#include "clonescope/corpus/templates.hpp"
#include "clonescope/error.hpp"
#include "clonescope/frontend/ast_json.hpp"
#include "clonescope/frontend/parser.hpp"
#include "clonescope/frontend/token.hpp"
#include "clonescope/rng.hpp"

using namespace clonescope;
using namespace clonescope::frontend;

namespace {

const AstNode* find_kind(const AstNode& n, NodeKind k) {
    if (n.kind == k) return &n;
    for (const auto& c : n.children)
        if (const auto* hit = find_kind(c, k)) return hit;
    return nullptr;
}

// Slices the source text covered by a span.
std::string slice(const std::string& src, const SourceSpan& s) {
    std::string out;
    int line = 1;
    int col = 1;
    for (char c : src) {
        const bool after_start = line > s.start_line || (line == s.start_line && col >= s.start_col);
        const bool before_end = line < s.end_line || (line == s.end_line && col <= s.end_col);
        if (after_start && before_end) out += c;
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return out;
}

}  // namespace

TEST(Lexer, TokenKindsAndPositions) {
    const auto toks = tokenize("uint x = 0x1F;\n  y += 2 ether; // tail");
    ASSERT_EQ(toks.size(), 10u);
    EXPECT_TRUE(toks[0].is_keyword("uint"));
    EXPECT_EQ(toks[1].kind, TokenKind::Identifier);
    EXPECT_EQ(toks[3].kind, TokenKind::Number);
    EXPECT_EQ(toks[3].lexeme, "0x1F");
    EXPECT_EQ(toks[5].span.start_line, 2);
    EXPECT_EQ(toks[5].span.start_col, 3);
    EXPECT_TRUE(toks[6].is_punct("+="));
    EXPECT_EQ(toks[6].span.end_col, 6);
}

TEST(Lexer, SkipsCommentsAndPragma) {
    const auto toks = tokenize("pragma solidity ^0.8.0;\n/* a\n b */ x");
    ASSERT_EQ(toks.size(), 1u);
    EXPECT_EQ(toks[0].span.start_line, 3);
    EXPECT_EQ(toks[0].span.start_col, 7);
}

TEST(Lexer, RejectsBadInput) {
    EXPECT_THROW(tokenize("x = \"open"), LexError);
    EXPECT_THROW(tokenize("/* never closed"), LexError);
    EXPECT_THROW(tokenize("a # b"), LexError);
}

TEST(Parser, ContractWithSeveralFunctions) {
    const std::string src =
        "contract Token {\n"
        "    mapping(address => uint256) balances;\n"
        "    function a() public { balances[msg.sender] = 1; }\n"
        "    function b(uint v) internal returns (uint) { return v * 2; }\n"
        "    function c() external;\n"
        "}\n";
    const auto fns = parse_contract(src);
    ASSERT_EQ(fns.size(), 2u);
    EXPECT_EQ(fns[0].qualified_name(), "Token.a");
    EXPECT_EQ(fns[1].params.size(), 1u);
    EXPECT_EQ(find_function(fns, "b").name, "b");
    EXPECT_THROW(find_function(fns, "c"), Error);
}

TEST(Parser, OperatorPrecedence) {
    const auto fn = parse_function("function f() { x = a + b * c; }");
    const auto* bin = find_kind(fn.body, NodeKind::BinaryOperation);
    ASSERT_NE(bin, nullptr);
    const auto* op = find_kind(*bin, NodeKind::Operator);
    ASSERT_NE(op, nullptr);
    EXPECT_EQ(op->value, "+");
}

TEST(Parser, SpansCoverTheirText) {
    const std::string src =
        "function f(uint a) public {\n"
        "    uint x = a + 1;\n"
        "    if (x > 2) {\n"
        "        x = 0;\n"
        "    }\n"
        "}\n";
    const auto fn = parse_function(src);
    ASSERT_EQ(fn.body.children.size(), 2u);
    EXPECT_EQ(slice(src, fn.body.children[0].span), "uint x = a + 1;");
    EXPECT_EQ(fn.body.children[1].span.start_line, 3);
    EXPECT_EQ(fn.body.children[1].span.end_line, 5);
}

TEST(Parser, UnsupportedConstructsAreNamed) {
    EXPECT_THROW(parse_function("function f() { unchecked { x = 1; } }"), UnsupportedConstruct);
    EXPECT_THROW(parse_function("function f() { (uint a, uint b) = g(); }"), UnsupportedConstruct);
    EXPECT_THROW(parse_function("function f() { g{value: 1}(); }"), UnsupportedConstruct);
}

TEST(Parser, SyntaxErrorsCarryLocation) {
    try {
        parse_function("function f() {\n  x = ;\n}");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.span().start_line, 2);
    }
}

TEST(Parser, AstJsonRoundTrip) {
    const auto fn = parse_function("function f(uint a) { for (uint i = 0; i < a; i++) { emit E(i); } }");
    EXPECT_EQ(ast_from_json(ast_to_json(fn.body)), fn.body);
}

TEST(ParserProperty, GeneratedFunctionsParseWithNestedSpans) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        const auto src = corpus::generate_function(rng, "g" + std::to_string(seed));
        FunctionAst fn;
        ASSERT_NO_THROW(fn = parse_function(src)) << src;
        bool nested = true;
        auto check = [&](const AstNode& parent, auto&& self) -> void {
            for (const auto& c : parent.children) {
                nested = nested && c.span.valid() && parent.span.contains(c.span);
                self(c, self);
            }
        };
        check(fn.body, check);
        EXPECT_TRUE(nested) << src;
    }
}
