#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "clonescope/corpus/templates.hpp"
#include "clonescope/features.hpp"
#include "clonescope/frontend/parser.hpp"
#include "clonescope/rng.hpp"
#include "clonescope/statement_tree.hpp"

using namespace clonescope;
using namespace clonescope::features;

namespace {

std::vector<stree::StatementTree> trees_of(const std::string& body) {
    return stree::decompose(frontend::parse_function("function f() {\n" + body + "\n}"));
}

// Multiset Jaccard from explicit counts.
double jaccard_oracle(std::vector<std::string> a, std::vector<std::string> b) {
    std::map<std::string, std::pair<int, int>> c;
    for (const auto& t : a) ++c[t].first;
    for (const auto& t : b) ++c[t].second;
    double lo = 0.0;
    double hi = 0.0;
    for (const auto& [_, p] : c) {
        lo += std::min(p.first, p.second);
        hi += std::max(p.first, p.second);
    }
    return hi == 0.0 ? 1.0 : lo / hi;
}

}  // namespace

TEST(Features, BagsOfAVariableDefinition) {
    const auto t = trees_of("uint256 amount = uint256(cnt) * _value;");
    ASSERT_EQ(t.size(), 1u);
    const auto fs = extract_features(t[0]);
    EXPECT_EQ(fs.bag(NodeCategory::ArithmeticOperator), std::vector<std::string>{"*"});
    EXPECT_EQ(fs.bag(NodeCategory::Identifier).size(), 3u);
    EXPECT_EQ(fs.bag(NodeCategory::DataType), (std::vector<std::string>{"uint256", "uint256"}));
    EXPECT_TRUE(fs.bag(NodeCategory::Value).empty());
    EXPECT_EQ(fs.tree_size, t[0].root.size());
}

TEST(Features, MembersUnitsAndValues) {
    const auto fs = extract_features(trees_of("x = msg.value + 3 ether;")[0]);
    EXPECT_EQ(fs.bag(NodeCategory::MemberVariable), std::vector<std::string>{"value"});
    EXPECT_EQ(fs.bag(NodeCategory::Unit), std::vector<std::string>{"ether"});
    EXPECT_EQ(fs.bag(NodeCategory::Value), std::vector<std::string>{"3"});
}

TEST(Features, JaccardExamples) {
    const std::vector<std::string> a{"x", "x", "y"};
    const std::vector<std::string> b{"x", "y", "y", "z"};
    EXPECT_DOUBLE_EQ(multiset_jaccard(a, b), 2.0 / 5.0);
    EXPECT_DOUBLE_EQ(multiset_jaccard({}, {}), 1.0);
    EXPECT_DOUBLE_EQ(multiset_jaccard(a, {}), 0.0);
}

TEST(Features, IdenticalTreesGiveUnitSimilarities) {
    const auto t = trees_of("balances[msg.sender] = balances[msg.sender].sub(amount);");
    const auto fs = extract_features(t[0]);
    const auto v = pair_features(fs, fs);
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
        EXPECT_EQ(v[3 * c], 1.0);
        EXPECT_EQ(v[3 * c + 1], 0.0);
    }
    EXPECT_EQ(v[kKindMatchIndex], 1.0);
    EXPECT_EQ(v[kSizeRatioIndex], 1.0);
    EXPECT_DOUBLE_EQ(v[kLogSizeIndex], std::log1p(2.0 * static_cast<double>(fs.tree_size)));
}

TEST(Features, NamesAndCategories) {
    EXPECT_EQ(feature_category(0), NodeCategory::ArithmeticOperator);
    EXPECT_EQ(feature_category(20), NodeCategory::CodeConstructs);
    EXPECT_FALSE(feature_category(kKindMatchIndex).has_value());
    EXPECT_EQ(category_title(NodeCategory::DataType), "Data type node feature");
    for (std::size_t i = 0; i < kPairDim; ++i) EXPECT_FALSE(feature_name(i).empty());
}

TEST(FeaturesProperty, SymmetricBoundedAndMatchesOracle) {
    std::vector<FeatureSet> sets;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        for (const auto& t : stree::decompose(frontend::parse_function(corpus::generate_function(rng, "g"))))
            sets.push_back(extract_features(t));
    }
    for (std::size_t i = 0; i < sets.size(); i += 3)
        for (std::size_t j = 1; j < sets.size(); j += 5) {
            const auto ab = pair_features(sets[i], sets[j]);
            const auto ba = pair_features(sets[j], sets[i]);
            EXPECT_EQ(ab, ba);
            for (std::size_t d = 0; d < kLogSizeIndex; ++d) {
                EXPECT_GE(ab[d], 0.0);
                EXPECT_LE(ab[d], 1.0);
            }
            for (std::size_t c = 0; c < kCategoryCount; ++c) {
                const auto cat = static_cast<NodeCategory>(c);
                EXPECT_DOUBLE_EQ(ab[3 * c], jaccard_oracle(sets[i].bag(cat), sets[j].bag(cat)));
            }
        }
}
