#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "clonescope/classifier/gbdt.hpp"
#include "clonescope/hpo/diffusion.hpp"

namespace clonescope::hpo {

struct HistoryEntry {
    Point point{};  ///< clamped unit-cube coordinates that were evaluated
    gbdt::HyperPoint hyper;
    double loss = 0.0;
    int stage = 1;
};

struct OptimizeOptions {
    std::size_t budget = 128;
    std::size_t k = 64;
    int steps = 8;
    std::uint64_t seed = 0;
    std::size_t draws_per_step = 4;  ///< candidates per (seed point, step)
    int surrogate_epochs = 2000;
    int refit_epochs = 200;          ///< warm retraining after each stage-2 evaluation
    std::function<void(const HistoryEntry&)> on_evaluation;
};

struct OptimizeResult {
    gbdt::HyperPoint best;
    Point best_point{};
    double best_loss = 0.0;
    std::vector<HistoryEntry> history;  ///< one entry per true-loss evaluation
    double surrogate_mse = 0.0;         ///< EvalNet fit after stage 1
    std::uint64_t training_seed = 0;    ///< seed used for every true-loss training run
};

/// Seed handed to gbdt::train for every evaluation made under `seed`.
std::uint64_t evaluation_seed(std::uint64_t seed) noexcept;

/// Validation cross-entropy of a model trained on `train` with `hyper`.
double true_loss(std::span<const gbdt::LabeledPair> train, std::span<const gbdt::LabeledPair> val,
                 const gbdt::HyperPoint& hyper, std::uint64_t training_seed);

/// Stage 1 evaluates k uniform points and fits the surrogate; stage 2 draws
/// diffusion candidates around the best points, scores them with the
/// surrogate and verifies the most promising one per round until the budget
/// is spent. Throws BudgetTooSmall unless budget >= k >= 2.
OptimizeResult optimize(std::span<const gbdt::LabeledPair> train, std::span<const gbdt::LabeledPair> val,
                        const OptimizeOptions& options);

nlohmann::ordered_json history_to_json(const HistoryEntry& e);

}  // namespace clonescope::hpo
