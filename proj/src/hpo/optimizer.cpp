#include "clonescope/hpo/optimizer.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "clonescope/error.hpp"
#include "clonescope/hpo/eval_net.hpp"
#include "clonescope/rng.hpp"

namespace clonescope::hpo {

namespace {

Point clamp_unit(Point p) {
    for (auto& x : p) x = std::clamp(x, 0.0, 1.0);
    return p;
}

std::vector<std::size_t> ranked(const std::vector<HistoryEntry>& history) {
    std::vector<std::size_t> order(history.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return history[a].loss < history[b].loss; });
    return order;
}

}  // namespace

std::uint64_t evaluation_seed(std::uint64_t seed) noexcept { return substream(seed, "hpo-train"); }

double true_loss(std::span<const gbdt::LabeledPair> train, std::span<const gbdt::LabeledPair> val,
                 const gbdt::HyperPoint& hyper, std::uint64_t training_seed) {
    const auto model = gbdt::train(train, hyper, training_seed);
    return gbdt::cross_entropy(val, model);
}

OptimizeResult optimize(std::span<const gbdt::LabeledPair> train, std::span<const gbdt::LabeledPair> val,
                        const OptimizeOptions& options) {
    if (options.k < 2) throw BudgetTooSmall("k must be at least 2");
    if (options.budget < options.k)
        throw BudgetTooSmall("budget " + std::to_string(options.budget) + " is smaller than k " +
                             std::to_string(options.k));
    if (val.empty()) throw DegenerateData("validation data is empty");

    OptimizeResult result;
    result.training_seed = evaluation_seed(options.seed);
    auto& history = result.history;
    history.reserve(options.budget);

    auto evaluate = [&](const Point& p, int stage) {
        HistoryEntry e;
        e.point = p;
        e.hyper = gbdt::denormalize(p);
        e.stage = stage;
        e.loss = true_loss(train, val, e.hyper, result.training_seed);
        history.push_back(e);
        if (options.on_evaluation) options.on_evaluation(history.back());
    };

    Rng rng(substream(options.seed, "hpo-sample"));
    for (std::size_t i = 0; i < options.k; ++i) {
        Point p{};
        for (auto& x : p) x = rng.uniform();
        evaluate(p, 1);
    }

    std::vector<Sample> samples;
    for (const auto& e : history) samples.push_back({e.point, e.loss});
    EvalNet net(substream(options.seed, "hpo-net"));
    result.surrogate_mse = train_eval_net(net, samples, options.surrogate_epochs, substream(options.seed, "hpo-fit")).final_mse;

    const DiffusionSchedule schedule(options.steps);
    const std::size_t q = std::max<std::size_t>(3, options.k / 10);
    auto seen = [&](const gbdt::HyperPoint& h) {
        return std::any_of(history.begin(), history.end(), [&](const HistoryEntry& e) { return e.hyper == h; });
    };

    for (std::size_t round = 0; history.size() < options.budget; ++round) {
        const auto order = ranked(history);
        const std::size_t n_seeds = std::min(q, order.size());

        Point chosen{};
        double chosen_score = std::numeric_limits<double>::infinity();
        bool found = false;
        for (int attempt = 0; attempt < 4 && !found; ++attempt) {
            std::vector<gbdt::HyperPoint> drawn;
            for (std::size_t s = 0; s < n_seeds; ++s) {
                const Point& v0 = history[order[s]].point;
                for (int t = 1; t <= schedule.steps(); ++t) {
                    for (std::size_t d = 0; d < options.draws_per_step; ++d) {
                        const Point cand = clamp_unit(marginal_sample(v0, t, schedule, normal_point(rng)));
                        const auto h = gbdt::denormalize(cand);
                        if (seen(h) || std::find(drawn.begin(), drawn.end(), h) != drawn.end()) continue;
                        drawn.push_back(h);
                        const double score = net.predict(cand);
                        if (score < chosen_score) {
                            chosen_score = score;
                            chosen = cand;
                            found = true;
                        }
                    }
                }
            }
        }
        if (!found) {
            // every diffusion draw duplicated an evaluated point
            for (auto& x : chosen) x = rng.uniform();
        }

        evaluate(chosen, 2);
        samples.push_back({history.back().point, history.back().loss});
        if (history.size() < options.budget)
            train_eval_net(net, samples, options.refit_epochs, substream(options.seed, "hpo-refit-" + std::to_string(round)));
    }

    const auto order = ranked(history);
    const auto& best = history[order.front()];
    result.best = best.hyper;
    result.best_point = best.point;
    result.best_loss = best.loss;
    return result;
}

nlohmann::ordered_json history_to_json(const HistoryEntry& e) {
    return {{"point", e.point}, {"hyper", gbdt::to_json(e.hyper)}, {"loss", e.loss}, {"stage", e.stage}};
}

}  // namespace clonescope::hpo
