#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "clonescope/hpo/diffusion.hpp"

namespace clonescope::hpo {

struct Sample {
    Point point{};
    double loss = 0.0;
};

/// Surrogate 7 -> 64 -> 64 -> 1 regressor with tanh hidden layers. Targets are
/// standardized during training; predict() returns values in the original
/// loss units.
class EvalNet {
public:
    static constexpr std::size_t kIn = 7;
    static constexpr std::size_t kHidden = 64;
    static constexpr std::size_t kParamCount =
        kHidden * kIn + kHidden + kHidden * kHidden + kHidden + kHidden + 1;

    explicit EvalNet(std::uint64_t seed);

    double predict(const Point& x) const;

    /// Network output before target de-standardization.
    double raw_output(const Point& x) const;

    /// Mean squared error of raw_output against `targets` over `points`; when
    /// `grad` is non-null it receives d(loss)/d(params), sized kParamCount.
    double raw_loss(std::span<const Point> points, std::span<const double> targets, std::vector<double>* grad) const;

    std::vector<double>& params() noexcept { return params_; }
    const std::vector<double>& params() const noexcept { return params_; }

    double target_mean() const noexcept { return mean_; }
    double target_scale() const noexcept { return scale_; }
    void set_target_scaling(double mean, double scale) noexcept {
        mean_ = mean;
        scale_ = scale;
    }

    std::uint64_t step_count = 0;
    double learning_rate = 1e-3;
    double momentum = 0.9;
    std::vector<double> velocity;

private:
    struct Activations {
        std::array<double, kHidden> h1{};
        std::array<double, kHidden> h2{};
        double out = 0.0;
    };
    void forward(const Point& x, Activations& a) const;

    std::vector<double> params_;
    double mean_ = 0.0;
    double scale_ = 1.0;
};

struct TrainReport {
    double final_mse = 0.0;  ///< in original loss units, over the training samples
};

/// Minibatch (16) gradient descent with momentum on the MSE. Target scaling is
/// recomputed from `samples`; weights and momentum carry over, so repeated
/// calls continue training. Deterministic in `seed`.
TrainReport train_eval_net(EvalNet& net, std::span<const Sample> samples, int epochs, std::uint64_t seed);

}  // namespace clonescope::hpo
