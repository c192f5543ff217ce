#include <gtest/gtest.h>

#include "clonescope/corpus/templates.hpp"
#include "clonescope/frontend/parser.hpp"
#include "clonescope/rng.hpp"
#include "clonescope/statement_tree.hpp"

using namespace clonescope;
using namespace clonescope::stree;

TEST(StatementTree, OneTreePerTopLevelStatement) {
    const auto fn = frontend::parse_function(
        "function f(uint a) public {\n"
        "    uint x = a;\n"
        "    x += 1;\n"
        "    if (x > 2) {\n"
        "        g(x);\n"
        "    }\n"
        "    while (x > 0) x--;\n"
        "    g(x);\n"
        "    return x;\n"
        "}\n");
    const auto trees = decompose(fn);
    ASSERT_EQ(trees.size(), 6u);
    EXPECT_EQ(trees[0].kind, StatementTreeKind::VariableDefinition);
    EXPECT_EQ(trees[1].kind, StatementTreeKind::AssignmentOperation);
    EXPECT_EQ(trees[2].kind, StatementTreeKind::ConditionalBlock);
    EXPECT_EQ(trees[3].kind, StatementTreeKind::ControlLoop);
    EXPECT_EQ(trees[4].kind, StatementTreeKind::FunctionCall);
    EXPECT_EQ(trees[5].kind, StatementTreeKind::OtherOperation);
    EXPECT_EQ(trees[2].span.start_line, 4);
    EXPECT_EQ(trees[2].span.end_line, 6);
    for (std::size_t i = 0; i < trees.size(); ++i) {
        EXPECT_EQ(trees[i].index, i);
        EXPECT_EQ(trees[i].span, trees[i].root.span);
    }
    const auto counts = kind_distribution(trees);
    for (auto c : counts) EXPECT_EQ(c, 1u);
}

TEST(StatementTree, KindNamesRoundTrip) {
    for (std::size_t i = 0; i < kStatementKindCount; ++i) {
        const auto k = static_cast<StatementTreeKind>(i);
        EXPECT_EQ(kind_from_name(kind_name(k)), k);
    }
    EXPECT_FALSE(kind_from_name("Loop").has_value());
}

TEST(StatementTree, EmptyBody) {
    const auto fn = frontend::parse_function("function f() {}");
    EXPECT_TRUE(decompose(fn).empty());
    EXPECT_TRUE(executable_lines(fn).empty());
}

TEST(StatementTreeProperty, EveryExecutableLineOwnedOnce) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        const auto fn = frontend::parse_function(corpus::generate_function(rng, "g"));
        const auto trees = decompose(fn);
        ASSERT_EQ(trees.size(), fn.body.children.size());
        for (int line : executable_lines(fn)) {
            int owners = 0;
            for (const auto& t : trees) owners += t.span.start_line <= line && line <= t.span.end_line;
            EXPECT_EQ(owners, 1) << "seed " << seed << " line " << line;
        }
        for (const auto& t : trees) EXPECT_EQ(classify_statement(t.root), t.kind);
    }
}
