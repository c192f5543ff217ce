#include <gtest/gtest.h>

#include <stdexcept>

#include "clonescope/error.hpp"
#include "clonescope/frontend/parser.hpp"
#include "clonescope/similarity.hpp"
#include "support.hpp"

using namespace clonescope;
using namespace clonescope::similarity;

namespace {

// Matrix whose row i / column j tree sits on line i + 1 / j + 1.
SimilarityMatrix matrix(std::size_t rows, std::size_t cols, std::vector<double> r) {
    SimilarityMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.r = std::move(r);
    for (std::size_t i = 0; i < rows; ++i) {
        stree::StatementTree t;
        t.span = {static_cast<int>(i) + 1, 1, static_cast<int>(i) + 1, 5};
        t.function_id = "A";
        m.row_trees.push_back(t);
    }
    for (std::size_t j = 0; j < cols; ++j) {
        stree::StatementTree t;
        t.span = {static_cast<int>(j) + 1, 1, static_cast<int>(j) + 1, 5};
        t.function_id = "B";
        m.col_trees.push_back(t);
    }
    return m;
}

}  // namespace

TEST(Aggregate, ProportionCountsCoveredRowsAndColumns) {
    // 3 x 2; rows 0 and 2 both hit column 0, row 1 hits nothing
    const auto m = matrix(3, 2, {0.9, 0.1, 0.2, 0.4, 0.6, 0.3});
    const auto s = aggregate(m, AggregationMode::Proportion);
    EXPECT_DOUBLE_EQ(s.s_a, 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(s.s_b, 1.0 / 2.0);
}

TEST(Aggregate, LiteralDividesMatchCountBySides) {
    const auto m = matrix(2, 2, {0.9, 0.8, 0.7, 0.1});
    const auto s = aggregate(m, AggregationMode::Literal);
    EXPECT_DOUBLE_EQ(s.s_a, 1.5);
    EXPECT_DOUBLE_EQ(s.s_b, 1.5);
    const auto p = aggregate(m, AggregationMode::Proportion);
    EXPECT_DOUBLE_EQ(p.s_a, 1.0);
}

TEST(Aggregate, ThresholdIsInclusive) {
    const auto m = matrix(1, 1, {0.5});
    EXPECT_EQ(aggregate(m, AggregationMode::Proportion, 0.5).s_a, 1.0);
    EXPECT_EQ(aggregate(m, AggregationMode::Proportion, 0.51).s_a, 0.0);
    EXPECT_THROW(aggregate(matrix(0, 2, {}), AggregationMode::Proportion), EmptyFunction);
}

TEST(Verdict, DualThreshold) {
    EXPECT_EQ(verdict(0.7, 0.1), Verdict::Clone);
    EXPECT_EQ(verdict(0.1, 0.7), Verdict::Clone);
    EXPECT_EQ(verdict(0.69, 0.69), Verdict::NotClone);
    EXPECT_THROW(verdict(0.5, 0.5, 1.0), std::invalid_argument);
    EXPECT_THROW(verdict(0.5, 0.5, 0.0), std::invalid_argument);
    EXPECT_EQ(mode_from_name("literal"), AggregationMode::Literal);
    EXPECT_THROW(mode_from_name("max"), Error);
}

TEST(Report, FirstArgmaxPerRowSortedByLine) {
    auto m = matrix(3, 3, {0.2, 0.9, 0.9, 0.1, 0.2, 0.3, 0.7, 0.6, 0.1});
    std::swap(m.row_trees[0].span, m.row_trees[2].span);
    const auto rep = generate_report(m, aggregate(m, AggregationMode::Proportion), 0.7, AggregationMode::Proportion);
    ASSERT_EQ(rep.matched_lines.size(), 2u);
    EXPECT_EQ(rep.matched_lines[0].a.start_line, 1);
    EXPECT_EQ(rep.matched_lines[0].b.start_line, 1);
    EXPECT_EQ(rep.matched_lines[1].a.start_line, 3);
    EXPECT_EQ(rep.matched_lines[1].b.start_line, 2);
    EXPECT_EQ(rep.function_a, "A");
    EXPECT_EQ(rep.verdict, Verdict::Clone);
}

TEST(Report, JsonRoundTripAndText) {
    const auto m = matrix(2, 2, {0.9, 0.1, 0.2, 0.8});
    auto rep = generate_report(m, aggregate(m, AggregationMode::Proportion), 0.7, AggregationMode::Proportion);
    rep.model_id = "0123456789abcdef";
    const auto j = report_to_json(rep);
    EXPECT_EQ(j.at("schema_version"), 1);
    EXPECT_EQ(j.at("verdict"), "clone");
    EXPECT_EQ(report_to_json(report_from_json(j)), j);
    const auto text = render_text(rep);
    EXPECT_NE(text.find("clone"), std::string::npos);
    EXPECT_NE(text.find("A line 2"), std::string::npos);
}

TEST(SimilarityProperty, SwappingFunctionsTransposes) {
    const auto& model = fixtures::small_model();
    const auto& recs = fixtures::small_corpus();
    for (std::size_t k = 0; k < recs.size(); k += 7) {
        const auto a = frontend::parse_function(recs[k].source_a);
        const auto b = frontend::parse_function(recs[k].source_b);
        const auto ab = compare_functions(a, b, model);
        const auto ba = compare_functions(b, a, model);
        ASSERT_EQ(ab.rows, ba.cols);
        EXPECT_EQ(ab.transposed().r, ba.r);
        for (auto mode : {AggregationMode::Proportion, AggregationMode::Literal}) {
            const auto s1 = aggregate(ab, mode);
            const auto s2 = aggregate(ba, mode);
            EXPECT_EQ(s1.s_a, s2.s_b);
            EXPECT_EQ(s1.s_b, s2.s_a);
            if (mode == AggregationMode::Proportion) {
                EXPECT_GE(s1.s_a, 0.0);
                EXPECT_LE(s1.s_a, 1.0);
            }
        }
    }
}

TEST(SimilarityProperty, SelfComparisonIsAClone) {
    const auto& model = fixtures::small_model();
    for (const auto& src : fixtures::small_templates()) {
        const auto f = frontend::parse_function(src);
        const auto s = aggregate(compare_functions(f, f, model), AggregationMode::Proportion);
        EXPECT_EQ(verdict(s.s_a, s.s_b), Verdict::Clone) << src;
    }
}

TEST(Similarity, EmptyFunctionRejected) {
    const auto e = frontend::parse_function("function e() {}");
    const auto f = frontend::parse_function("function f() { x = 1; }");
    EXPECT_THROW(compare_functions(e, f, fixtures::small_model()), EmptyFunction);
}
