#include "clonescope/similarity.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "clonescope/error.hpp"
#include "clonescope/frontend/ast_json.hpp"

namespace clonescope::similarity {

std::string_view mode_name(AggregationMode m) noexcept {
    return m == AggregationMode::Proportion ? "proportion" : "literal";
}

AggregationMode mode_from_name(std::string_view name) {
    if (name == "proportion") return AggregationMode::Proportion;
    if (name == "literal") return AggregationMode::Literal;
    throw Error("unknown aggregation mode '" + std::string(name) + "'");
}

SimilarityMatrix SimilarityMatrix::transposed() const {
    SimilarityMatrix t;
    t.rows = cols;
    t.cols = rows;
    t.r.resize(r.size());
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t.r[j * rows + i] = r[i * cols + j];
    t.row_trees = col_trees;
    t.col_trees = row_trees;
    return t;
}

SimilarityMatrix compare_trees(std::vector<stree::StatementTree> a, const std::vector<features::FeatureSet>& fa,
                               std::vector<stree::StatementTree> b, const std::vector<features::FeatureSet>& fb,
                               const gbdt::GbdtModel& model) {
    if (a.empty()) throw EmptyFunction("function A has no statements");
    if (b.empty()) throw EmptyFunction("function B has no statements");
    SimilarityMatrix m;
    m.rows = a.size();
    m.cols = b.size();
    m.r.resize(m.rows * m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            m.r[i * m.cols + j] = gbdt::predict_proba(model, features::pair_features(fa[i], fb[j]));
    m.row_trees = std::move(a);
    m.col_trees = std::move(b);
    return m;
}

SimilarityMatrix compare_functions(const FunctionAst& fa, const FunctionAst& fb, const gbdt::GbdtModel& model) {
    auto ta = stree::decompose(fa);
    auto tb = stree::decompose(fb);
    if (ta.empty()) throw EmptyFunction("function '" + fa.qualified_name() + "' has no statements");
    if (tb.empty()) throw EmptyFunction("function '" + fb.qualified_name() + "' has no statements");
    std::vector<features::FeatureSet> xa;
    std::vector<features::FeatureSet> xb;
    for (const auto& t : ta) xa.push_back(features::extract_features(t));
    for (const auto& t : tb) xb.push_back(features::extract_features(t));
    return compare_trees(std::move(ta), xa, std::move(tb), xb, model);
}

Scores aggregate(const SimilarityMatrix& m, AggregationMode mode, double tau) {
    if (m.rows == 0 || m.cols == 0) throw EmptyFunction("empty similarity matrix");
    auto hit = [&](std::size_t i, std::size_t j) { return m.at(i, j) >= tau; };
    Scores s;
    if (mode == AggregationMode::Literal) {
        std::size_t total = 0;
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j) total += hit(i, j) ? 1 : 0;
        s.s_a = static_cast<double>(total) / static_cast<double>(m.rows);
        s.s_b = static_cast<double>(total) / static_cast<double>(m.cols);
        return s;
    }
    std::size_t rows_hit = 0;
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (hit(i, j)) {
                ++rows_hit;
                break;
            }
        }
    }
    std::size_t cols_hit = 0;
    for (std::size_t j = 0; j < m.cols; ++j) {
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (hit(i, j)) {
                ++cols_hit;
                break;
            }
        }
    }
    s.s_a = static_cast<double>(rows_hit) / static_cast<double>(m.rows);
    s.s_b = static_cast<double>(cols_hit) / static_cast<double>(m.cols);
    return s;
}

Verdict verdict(double s_a, double s_b, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    return std::max(s_a, s_b) >= delta ? Verdict::Clone : Verdict::NotClone;
}

std::string_view verdict_name(Verdict v) noexcept { return v == Verdict::Clone ? "clone" : "not-clone"; }

SimilarityReport generate_report(const SimilarityMatrix& m, const Scores& scores, double delta, AggregationMode mode,
                                 double tau) {
    SimilarityReport rep;
    rep.s_a = scores.s_a;
    rep.s_b = scores.s_b;
    rep.delta = delta;
    rep.tau = tau;
    rep.mode = mode;
    rep.verdict = verdict(scores.s_a, scores.s_b, delta);
    if (!m.row_trees.empty()) rep.function_a = m.row_trees.front().function_id;
    if (!m.col_trees.empty()) rep.function_b = m.col_trees.front().function_id;
    for (std::size_t i = 0; i < m.rows; ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < m.cols; ++j)
            if (m.at(i, j) > m.at(i, best)) best = j;
        if (m.at(i, best) < tau) continue;
        rep.matched_lines.push_back({m.row_trees[i].span, m.col_trees[best].span, m.at(i, best)});
    }
    std::stable_sort(rep.matched_lines.begin(), rep.matched_lines.end(),
                     [](const LineMatch& x, const LineMatch& y) { return x.a.start_line < y.a.start_line; });
    return rep;
}

nlohmann::ordered_json report_to_json(const SimilarityReport& r) {
    auto lines = [](const SourceSpan& s) { return nlohmann::ordered_json{{"sl", s.start_line}, {"el", s.end_line}}; };
    nlohmann::ordered_json matches = nlohmann::ordered_json::array();
    for (const auto& m : r.matched_lines) matches.push_back({{"a", lines(m.a)}, {"b", lines(m.b)}, {"score", m.score}});
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["verdict"] = verdict_name(r.verdict);
    j["s_a"] = r.s_a;
    j["s_b"] = r.s_b;
    j["delta"] = r.delta;
    j["tau"] = r.tau;
    j["mode"] = mode_name(r.mode);
    j["matched_lines"] = std::move(matches);
    j["function_a"] = r.function_a;
    j["function_b"] = r.function_b;
    j["model"] = r.model_id;
    return j;
}

SimilarityReport report_from_json(const nlohmann::ordered_json& j) {
    try {
        SimilarityReport r;
        const auto v = j.at("verdict").get<std::string>();
        if (v != "clone" && v != "not-clone") throw Error("unknown verdict '" + v + "'");
        r.verdict = v == "clone" ? Verdict::Clone : Verdict::NotClone;
        r.s_a = j.at("s_a").get<double>();
        r.s_b = j.at("s_b").get<double>();
        r.delta = j.at("delta").get<double>();
        r.tau = j.value("tau", kDefaultMatchThreshold);
        r.mode = mode_from_name(j.at("mode").get<std::string>());
        for (const auto& m : j.at("matched_lines")) {
            LineMatch lm;
            lm.a.start_line = m.at("a").at("sl").get<int>();
            lm.a.end_line = m.at("a").at("el").get<int>();
            lm.b.start_line = m.at("b").at("sl").get<int>();
            lm.b.end_line = m.at("b").at("el").get<int>();
            lm.score = m.at("score").get<double>();
            r.matched_lines.push_back(lm);
        }
        r.function_a = j.value("function_a", "");
        r.function_b = j.value("function_b", "");
        r.model_id = j.value("model", "");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("invalid report JSON: ") + e.what());
    }
}

std::string render_text(const SimilarityReport& r) {
    auto lines = [](const SourceSpan& s) {
        return s.start_line == s.end_line ? "line " + std::to_string(s.start_line)
                                          : "lines " + std::to_string(s.start_line) + "-" + std::to_string(s.end_line);
    };
    char buf[128];
    std::ostringstream out;
    out << "Similarity report\n";
    out << "  function A: " << r.function_a << "\n";
    out << "  function B: " << r.function_b << "\n";
    if (!r.model_id.empty()) out << "  model:      " << r.model_id << "\n";
    std::snprintf(buf, sizeof buf, "  s_A = %.4f   s_B = %.4f   (%s, delta = %.2f)\n", r.s_a, r.s_b,
                  std::string(mode_name(r.mode)).c_str(), r.delta);
    out << buf;
    out << "  verdict:    " << verdict_name(r.verdict) << "\n";
    if (r.matched_lines.empty()) {
        out << "  no similar lines\n";
        return out.str();
    }
    out << "  similar lines:\n";
    for (const auto& m : r.matched_lines) {
        std::snprintf(buf, sizeof buf, "    A %-12s <-> B %-12s score %.4f\n", lines(m.a).c_str(), lines(m.b).c_str(),
                      m.score);
        out << buf;
    }
    return out.str();
}

}  // namespace clonescope::similarity
