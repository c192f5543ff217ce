#include "clonescope/hpo/eval_net.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "clonescope/kernels/kernels.hpp"
#include "clonescope/rng.hpp"

namespace clonescope::hpo {

namespace {

constexpr std::size_t kIn = EvalNet::kIn;
constexpr std::size_t kH = EvalNet::kHidden;

// offsets into the flat parameter vector
constexpr std::size_t kW1 = 0;
constexpr std::size_t kB1 = kW1 + kH * kIn;
constexpr std::size_t kW2 = kB1 + kH;
constexpr std::size_t kB2 = kW2 + kH * kH;
constexpr std::size_t kW3 = kB2 + kH;
constexpr std::size_t kB3 = kW3 + kH;
static_assert(kB3 + 1 == EvalNet::kParamCount);

constexpr std::size_t kBatch = 16;

// unit cube -> [-1, 1]^7
Point centered(const Point& x) {
    Point c{};
    for (std::size_t i = 0; i < kIn; ++i) c[i] = 2.0 * x[i] - 1.0;
    return c;
}

}  // namespace

EvalNet::EvalNet(std::uint64_t seed) : params_(kParamCount, 0.0) {
    Rng rng(substream(seed, "evalnet-init"));
    auto fill = [&](std::size_t off, std::size_t count, double limit) {
        for (std::size_t i = 0; i < count; ++i) params_[off + i] = rng.uniform(-limit, limit);
    };
    fill(kW1, kH * kIn, std::sqrt(6.0 / static_cast<double>(kIn + kH)));
    fill(kW2, kH * kH, std::sqrt(6.0 / static_cast<double>(kH + kH)));
    // output layer starts at zero: the untrained net predicts the target mean
    velocity.assign(kParamCount, 0.0);
}

void EvalNet::forward(const Point& x, Activations& a) const {
    const double* p = params_.data();
    const Point c = centered(x);
    for (std::size_t j = 0; j < kH; ++j)
        a.h1[j] = std::tanh(p[kB1 + j] + kernels::active().dot(p + kW1 + j * kIn, c.data(), kIn));
    for (std::size_t j = 0; j < kH; ++j)
        a.h2[j] = std::tanh(p[kB2 + j] + kernels::active().dot(p + kW2 + j * kH, a.h1.data(), kH));
    a.out = p[kB3] + kernels::active().dot(p + kW3, a.h2.data(), kH);
}

double EvalNet::raw_output(const Point& x) const {
    Activations a;
    forward(x, a);
    return a.out;
}

double EvalNet::predict(const Point& x) const { return mean_ + scale_ * raw_output(x); }

double EvalNet::raw_loss(std::span<const Point> points, std::span<const double> targets, std::vector<double>* grad) const {
    if (points.size() != targets.size() || points.empty()) throw std::invalid_argument("raw_loss: bad sample batch");
    const auto& k = kernels::active();
    const double* p = params_.data();
    const double inv_n = 1.0 / static_cast<double>(points.size());
    if (grad) grad->assign(kParamCount, 0.0);
    double* g = grad ? grad->data() : nullptr;

    double loss = 0.0;
    Activations a;
    std::array<double, kH> d2{};
    std::array<double, kH> dh1{};
    for (std::size_t s = 0; s < points.size(); ++s) {
        forward(points[s], a);
        const double err = a.out - targets[s];
        loss += err * err * inv_n;
        if (!g) continue;

        const double dout = 2.0 * err * inv_n;
        g[kB3] += dout;
        k.axpy(dout, a.h2.data(), g + kW3, kH);
        for (std::size_t j = 0; j < kH; ++j) d2[j] = dout * p[kW3 + j] * (1.0 - a.h2[j] * a.h2[j]);

        const Point c = centered(points[s]);
        dh1.fill(0.0);
        for (std::size_t j = 0; j < kH; ++j) {
            g[kB2 + j] += d2[j];
            k.axpy(d2[j], a.h1.data(), g + kW2 + j * kH, kH);
            k.axpy(d2[j], p + kW2 + j * kH, dh1.data(), kH);
        }
        for (std::size_t i = 0; i < kH; ++i) {
            const double d1 = dh1[i] * (1.0 - a.h1[i] * a.h1[i]);
            g[kB1 + i] += d1;
            k.axpy(d1, c.data(), g + kW1 + i * kIn, kIn);
        }
    }
    return loss;
}

TrainReport train_eval_net(EvalNet& net, std::span<const Sample> samples, int epochs, std::uint64_t seed) {
    if (samples.size() < 2) throw std::invalid_argument("train_eval_net needs at least two samples");
    const auto n = samples.size();

    double mean = 0.0;
    for (const auto& s : samples) mean += s.loss;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& s : samples) var += (s.loss - mean) * (s.loss - mean);
    var /= static_cast<double>(n);
    const double scale = var > 1e-24 ? std::sqrt(var) : 1.0;
    net.set_target_scaling(mean, scale);

    std::vector<Point> points(n);
    std::vector<double> targets(n);
    for (std::size_t i = 0; i < n; ++i) {
        points[i] = samples[i].point;
        targets[i] = (samples[i].loss - mean) / scale;
    }

    if (net.velocity.size() != EvalNet::kParamCount) net.velocity.assign(EvalNet::kParamCount, 0.0);
    Rng rng(substream(seed, "evalnet-train"));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<Point> bp;
    std::vector<double> bt;
    std::vector<double> grad;
    auto& params = net.params();
    for (int epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(order.begin(), order.end());
        for (std::size_t start = 0; start < n; start += kBatch) {
            const std::size_t end = std::min(n, start + kBatch);
            bp.clear();
            bt.clear();
            for (std::size_t i = start; i < end; ++i) {
                bp.push_back(points[order[i]]);
                bt.push_back(targets[order[i]]);
            }
            net.raw_loss(bp, bt, &grad);
            for (std::size_t i = 0; i < EvalNet::kParamCount; ++i) {
                net.velocity[i] = net.momentum * net.velocity[i] - net.learning_rate * grad[i];
                params[i] += net.velocity[i];
            }
            ++net.step_count;
        }
    }

    TrainReport report;
    for (const auto& s : samples) {
        const double e = net.predict(s.point) - s.loss;
        report.final_mse += e * e;
    }
    report.final_mse /= static_cast<double>(n);
    return report;
}

}  // namespace clonescope::hpo
