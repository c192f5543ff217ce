#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "clonescope/classifier/gbdt.hpp"
#include "clonescope/features.hpp"
#include "clonescope/statement_tree.hpp"

namespace clonescope::similarity {

inline constexpr double kDefaultDelta = 0.7;
inline constexpr double kDefaultMatchThreshold = 0.5;

enum class AggregationMode { Proportion, Literal };

std::string_view mode_name(AggregationMode m) noexcept;
AggregationMode mode_from_name(std::string_view name);

/// Row i is statement tree i of function A, column j tree j of function B.
struct SimilarityMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> r;  ///< row-major probabilities
    std::vector<stree::StatementTree> row_trees;
    std::vector<stree::StatementTree> col_trees;

    double at(std::size_t i, std::size_t j) const { return r[i * cols + j]; }
    SimilarityMatrix transposed() const;
};

/// Scores every statement-tree pair with the classifier. Throws EmptyFunction
/// when either function has no statements.
SimilarityMatrix compare_functions(const FunctionAst& fa, const FunctionAst& fb, const gbdt::GbdtModel& model);

/// Same, for trees that are already decomposed and featurized.
SimilarityMatrix compare_trees(std::vector<stree::StatementTree> a, const std::vector<features::FeatureSet>& fa,
                               std::vector<stree::StatementTree> b, const std::vector<features::FeatureSet>& fb,
                               const gbdt::GbdtModel& model);

struct Scores {
    double s_a = 0.0;
    double s_b = 0.0;
};

/// Binarizes R at `tau`, then either averages row/column maxima (proportion)
/// or divides the count of matching cells by m and by n (literal).
Scores aggregate(const SimilarityMatrix& m, AggregationMode mode, double tau = kDefaultMatchThreshold);

enum class Verdict { NotClone, Clone };

/// Clone iff max(s_a, s_b) >= delta.
Verdict verdict(double s_a, double s_b, double delta = kDefaultDelta);
std::string_view verdict_name(Verdict v) noexcept;

struct LineMatch {
    SourceSpan a;
    SourceSpan b;
    double score = 0.0;
};

struct SimilarityReport {
    Verdict verdict = Verdict::NotClone;
    double s_a = 0.0;
    double s_b = 0.0;
    double delta = kDefaultDelta;
    double tau = kDefaultMatchThreshold;
    AggregationMode mode = AggregationMode::Proportion;
    std::vector<LineMatch> matched_lines;
    std::string function_a;
    std::string function_b;
    std::string model_id;
};

/// For every row with a cell at or above tau, pairs the row's tree with the
/// first column attaining the row maximum. Sorted by start line in A.
SimilarityReport generate_report(const SimilarityMatrix& m, const Scores& scores, double delta, AggregationMode mode,
                                 double tau = kDefaultMatchThreshold);

nlohmann::ordered_json report_to_json(const SimilarityReport& r);
SimilarityReport report_from_json(const nlohmann::ordered_json& j);
std::string render_text(const SimilarityReport& r);

}  // namespace clonescope::similarity
