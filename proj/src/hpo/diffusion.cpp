#include "clonescope/hpo/diffusion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "clonescope/kernels/kernels.hpp"

namespace clonescope::hpo {

DiffusionSchedule::DiffusionSchedule(int steps) : steps_(steps) {
    if (steps < 1) throw std::invalid_argument("diffusion schedule needs at least one step");
    g_.assign(static_cast<std::size_t>(steps) + 1, 0.0);
    d_.assign(g_.size(), 1.0);
    d_bar_.assign(g_.size(), 1.0);
    for (int t = 1; t <= steps; ++t) {
        // cos^2(pi/2 * t/T) written as sin^2(pi/2 * (T-t)/T) so that t = T gives exactly 0
        const double s = std::sin(std::numbers::pi / 2.0 * static_cast<double>(steps - t) / static_cast<double>(steps));
        const auto i = static_cast<std::size_t>(t);
        g_[i] = s * s;
        d_[i] = 1.0 - g_[i];
        d_bar_[i] = d_bar_[i - 1] * d_[i];
    }
}

namespace {
void check_step(int t, int steps) {
    if (t < 0 || t > steps)
        throw std::out_of_range("diffusion step " + std::to_string(t) + " outside [0, " + std::to_string(steps) + "]");
}
}  // namespace

double DiffusionSchedule::g(int t) const {
    check_step(t, steps_);
    return g_[static_cast<std::size_t>(t)];
}

double DiffusionSchedule::D(int t) const {
    check_step(t, steps_);
    return d_[static_cast<std::size_t>(t)];
}

double DiffusionSchedule::D_bar(int t) const {
    check_step(t, steps_);
    return d_bar_[static_cast<std::size_t>(t)];
}

Point forward_step(const Point& v_prev, int t, const DiffusionSchedule& s, const Point& noise) {
    const double a = std::sqrt(s.D(t));
    const double b = std::sqrt(s.g(t));
    Point out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * v_prev[i] + b * noise[i];
    return out;
}

Point marginal_sample(const Point& v0, int t, const DiffusionSchedule& s, const Point& noise) {
    const double d = s.D_bar(t);
    const double a = std::sqrt(d);
    const double b = std::sqrt(1.0 - d);
    Point out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * v0[i] + b * noise[i];
    return out;
}

Point normal_point(Rng& rng) {
    Point p{};
    for (auto& x : p) x = rng.normal();
    return p;
}

void forward_step_batch(std::span<double> v, int t, const DiffusionSchedule& s, std::span<const double> noise) {
    if (noise.size() != v.size()) throw std::invalid_argument("noise batch size differs from state batch size");
    kernels::scale_add(std::sqrt(s.D(t)), v, std::sqrt(s.g(t)), noise, v);
}

}  // namespace clonescope::hpo
