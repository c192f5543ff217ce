#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "clonescope/classifier/gbdt.hpp"
#include "clonescope/corpus/pairs_io.hpp"
#include "clonescope/pipeline/config.hpp"
#include "clonescope/similarity.hpp"

namespace clonescope::pipeline {

/// `file.sol:name`, `file.sol:Contract.name`, or just `file.sol` when the
/// file defines exactly one function.
struct FunctionRef {
    std::filesystem::path file;
    std::string function;

    static FunctionRef parse(const std::string& spec);
};

std::string read_file(const std::filesystem::path& path);

/// Errors carry the file (and function) they came from.
FunctionAst load_function(const FunctionRef& ref);

/// PairRecord JSONL is turned into statement-tree pairs; files whose records
/// carry "x"/"y" are read as feature-level pairs directly.
std::vector<gbdt::LabeledPair> load_training_data(const std::filesystem::path& path, std::uint64_t seed);

gbdt::HyperPoint resolve_hyper(const RunConfig& config);

/// Loads config.model_path, or trains on config.train_path when no model is
/// given. Throws clonescope::Error when neither is available.
gbdt::GbdtModel obtain_model(const RunConfig& config);

similarity::SimilarityReport compare(const FunctionAst& a, const FunctionAst& b, const gbdt::GbdtModel& model,
                                     const RunConfig& config);

/// Parse, decompose, score and report; writes the JSON and text reports when
/// their paths are set in the config.
similarity::SimilarityReport run_end_to_end(const RunConfig& config, const FunctionRef& a, const FunctionRef& b);

void write_report(const similarity::SimilarityReport& report, const RunConfig& config);

struct PairScore {
    similarity::Scores scores;
    int label = 0;
};

/// Function-level scores for each labeled record.
std::vector<PairScore> score_pairs(std::span<const corpus::PairRecord> records, const gbdt::GbdtModel& model,
                                   similarity::AggregationMode mode, double tau);

struct SweepRow {
    double delta = 0.0;
    double precision = 0.0;  ///< 1 when nothing is predicted positive
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;
};

SweepRow evaluate_at(std::span<const PairScore> scores, double delta);
std::vector<SweepRow> sweep_delta(std::span<const PairScore> scores, std::span<const double> deltas);
std::vector<SweepRow> sweep_delta(const gbdt::GbdtModel& model, std::span<const corpus::PairRecord> records,
                                  std::span<const double> deltas, similarity::AggregationMode mode, double tau);

/// 0.50, 0.55, ..., 0.90
std::vector<double> default_deltas();

std::string render_sweep(std::span<const SweepRow> rows);

}  // namespace clonescope::pipeline
