#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>

#include "clonescope/classifier/hyper.hpp"
#include "clonescope/similarity.hpp"

namespace clonescope::pipeline {

struct RunConfig {
    std::uint64_t seed = 0;
    double delta = similarity::kDefaultDelta;
    double tau = similarity::kDefaultMatchThreshold;
    similarity::AggregationMode mode = similarity::AggregationMode::Proportion;
    gbdt::HyperPoint hyper;             ///< used unless hyper_path is set
    std::filesystem::path hyper_path;   ///< JSON written by `optimize`
    std::filesystem::path model_path;   ///< trained model to load
    std::filesystem::path train_path;   ///< training pairs when no model is given
    std::filesystem::path json_out;     ///< report destinations; empty = skip
    std::filesystem::path text_out;

    /// Throws clonescope::Error unless delta and tau lie in (0, 1) and the
    /// hyperparameters are in their domain.
    void validate() const;
};

/// `key = value` lines; '#' starts a comment. Keys: seed, delta, tau, mode,
/// hyper, model, train, json_out, text_out and the HyperPoint field names.
/// Values override the fields of `base`. Throws SchemaError on unknown keys or
/// bad values.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Applies CLONESCOPE_SEED when set. Throws clonescope::Error if malformed.
void apply_environment(RunConfig& config);

/// Seed from a decimal string; throws clonescope::Error on garbage.
std::uint64_t parse_seed(const std::string& text);

}  // namespace clonescope::pipeline
