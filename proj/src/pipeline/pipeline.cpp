#include "clonescope/pipeline/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "clonescope/classifier/model_io.hpp"
#include "clonescope/corpus/statement_pairs.hpp"
#include "clonescope/error.hpp"
#include "clonescope/features.hpp"
#include "clonescope/frontend/parser.hpp"
#include "clonescope/rng.hpp"
#include "clonescope/statement_tree.hpp"

namespace clonescope::pipeline {

FunctionRef FunctionRef::parse(const std::string& spec) {
    // a colon followed by a path separator belongs to the path (C:\...)
    const auto colon = spec.rfind(':');
    if (colon == std::string::npos || colon + 1 == spec.size() || spec.find_first_of("/\\", colon) != std::string::npos)
        return {spec, ""};
    return {spec.substr(0, colon), spec.substr(colon + 1)};
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

FunctionAst load_function(const FunctionRef& ref) {
    const auto source = read_file(ref.file);
    try {
        auto functions = frontend::parse_contract(source);
        if (ref.function.empty()) {
            if (functions.size() != 1)
                throw Error("file defines " + std::to_string(functions.size()) +
                            " functions; name one with file:function");
            return functions.front();
        }
        return frontend::find_function(functions, ref.function);
    } catch (const Error& e) {
        const auto where = ref.function.empty() ? ref.file.string() : ref.file.string() + ":" + ref.function;
        throw Error(where + ": " + e.what());
    }
}

std::vector<gbdt::LabeledPair> load_training_data(const std::filesystem::path& path, std::uint64_t seed) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    std::string line;
    while (std::getline(in, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
    }
    const bool feature_level = line.find("\"x\"") != std::string::npos && line.find("\"source_a\"") == std::string::npos;
    try {
        if (feature_level) return corpus::load_labeled(path);
        const auto records = corpus::load_pairs(path);
        corpus::StatementPairOptions opts;
        opts.seed = substream(seed, "training-pairs");
        return corpus::derive_statement_pairs(records, opts);
    } catch (const SchemaError& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

gbdt::HyperPoint resolve_hyper(const RunConfig& config) {
    if (config.hyper_path.empty()) return config.hyper;
    std::ifstream in(config.hyper_path);
    if (!in) throw Error("cannot read " + config.hyper_path.string());
    try {
        nlohmann::ordered_json j;
        in >> j;
        return gbdt::hyper_from_json(j);
    } catch (const std::exception& e) {
        throw Error(config.hyper_path.string() + ": " + e.what());
    }
}

gbdt::GbdtModel obtain_model(const RunConfig& config) {
    if (!config.model_path.empty()) return gbdt::load_model(config.model_path);
    if (config.train_path.empty()) throw Error("no model given and no training data to build one");
    const auto data = load_training_data(config.train_path, config.seed);
    return gbdt::train(data, resolve_hyper(config), substream(config.seed, "model"));
}

similarity::SimilarityReport compare(const FunctionAst& a, const FunctionAst& b, const gbdt::GbdtModel& model,
                                     const RunConfig& config) {
    const auto m = similarity::compare_functions(a, b, model);
    const auto scores = similarity::aggregate(m, config.mode, config.tau);
    auto report = similarity::generate_report(m, scores, config.delta, config.mode, config.tau);
    report.function_a = a.qualified_name();
    report.function_b = b.qualified_name();
    report.model_id = gbdt::model_id(model);
    return report;
}

void write_report(const similarity::SimilarityReport& report, const RunConfig& config) {
    if (!config.json_out.empty()) {
        std::ofstream out(config.json_out);
        if (!out) throw Error("cannot write " + config.json_out.string());
        out << similarity::report_to_json(report).dump(2) << "\n";
    }
    if (!config.text_out.empty()) {
        std::ofstream out(config.text_out);
        if (!out) throw Error("cannot write " + config.text_out.string());
        out << similarity::render_text(report);
    }
}

similarity::SimilarityReport run_end_to_end(const RunConfig& config, const FunctionRef& a, const FunctionRef& b) {
    config.validate();
    const auto fa = load_function(a);
    const auto fb = load_function(b);
    const auto model = obtain_model(config);
    auto report = compare(fa, fb, model, config);
    write_report(report, config);
    return report;
}

std::vector<PairScore> score_pairs(std::span<const corpus::PairRecord> records, const gbdt::GbdtModel& model,
                                   similarity::AggregationMode mode, double tau) {
    std::vector<PairScore> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        try {
            const auto fa = frontend::parse_function(r.source_a);
            const auto fb = frontend::parse_function(r.source_b);
            const auto m = similarity::compare_functions(fa, fb, model);
            out.push_back({similarity::aggregate(m, mode, tau), r.label});
        } catch (const Error& e) {
            throw Error("record " + r.id + ": " + e.what());
        }
    }
    return out;
}

SweepRow evaluate_at(std::span<const PairScore> scores, double delta) {
    SweepRow row;
    row.delta = delta;
    for (const auto& s : scores) {
        const bool predicted = similarity::verdict(s.scores.s_a, s.scores.s_b, delta) == similarity::Verdict::Clone;
        if (predicted && s.label == 1) ++row.tp;
        else if (predicted) ++row.fp;
        else if (s.label == 1) ++row.fn;
        else ++row.tn;
    }
    row.precision = row.tp + row.fp == 0 ? 1.0 : static_cast<double>(row.tp) / static_cast<double>(row.tp + row.fp);
    row.recall = row.tp + row.fn == 0 ? 1.0 : static_cast<double>(row.tp) / static_cast<double>(row.tp + row.fn);
    row.f1 = row.precision + row.recall == 0.0 ? 0.0 : 2.0 * row.precision * row.recall / (row.precision + row.recall);
    return row;
}

std::vector<SweepRow> sweep_delta(std::span<const PairScore> scores, std::span<const double> deltas) {
    if (scores.empty()) throw DegenerateData("sweep needs at least one labeled pair");
    std::vector<SweepRow> rows;
    for (double d : deltas) rows.push_back(evaluate_at(scores, d));
    return rows;
}

std::vector<SweepRow> sweep_delta(const gbdt::GbdtModel& model, std::span<const corpus::PairRecord> records,
                                  std::span<const double> deltas, similarity::AggregationMode mode, double tau) {
    const auto scores = score_pairs(records, model, mode, tau);
    return sweep_delta(scores, deltas);
}

std::vector<double> default_deltas() {
    std::vector<double> d;
    for (int i = 0; i <= 8; ++i) d.push_back(static_cast<double>(50 + 5 * i) / 100.0);
    return d;
}

std::string render_sweep(std::span<const SweepRow> rows) {
    std::ostringstream out;
    out << "delta | precision | recall | f1\n";
    char buf[96];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.2f | %.4f | %.4f | %.4f\n", r.delta, r.precision, r.recall, r.f1);
        out << buf;
    }
    return out.str();
}

}  // namespace clonescope::pipeline
