#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "clonescope/classifier/hyper.hpp"
#include "clonescope/rng.hpp"

namespace clonescope::hpo {

using Point = gbdt::UnitPoint;

/// Cosine noise schedule over steps t = 1..T with g_t = cos^2(pi/2 * t/T),
/// D_t = 1 - g_t and Dbar_t = D_1 * ... * D_t (Dbar_0 = 1).
class DiffusionSchedule {
public:
    explicit DiffusionSchedule(int steps);

    int steps() const noexcept { return steps_; }
    double g(int t) const;
    double D(int t) const;
    double D_bar(int t) const;

private:
    int steps_;
    std::vector<double> g_;
    std::vector<double> d_;
    std::vector<double> d_bar_;
};

/// sqrt(D_t) * v_prev + sqrt(g_t) * noise. Not clamped.
Point forward_step(const Point& v_prev, int t, const DiffusionSchedule& s, const Point& noise);

/// Closed-form marginal: sqrt(Dbar_t) * v0 + sqrt(1 - Dbar_t) * noise.
Point marginal_sample(const Point& v0, int t, const DiffusionSchedule& s, const Point& noise);

Point normal_point(Rng& rng);

/// forward_step applied in place to a flat batch of values (any layout).
void forward_step_batch(std::span<double> v, int t, const DiffusionSchedule& s, std::span<const double> noise);

}  // namespace clonescope::hpo
