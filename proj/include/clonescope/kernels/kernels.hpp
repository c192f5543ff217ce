#pragma once

// Data-parallel inner loops shared by the evaluation network and the batched
// diffusion sampler. Each kernel has a scalar reference and SIMD variants; the
// variant is chosen once per process from the CPU features (or the
// CLONESCOPE_SIMD environment variable: scalar | avx2 | neon).
//
// Elementwise kernels (axpy, scale_add) are bit-identical across variants.
// Reductions (dot) reassociate the sum and agree to rounding only.

#include <cstddef>
#include <span>
#include <string_view>

namespace clonescope::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
    Isa isa;
    /// sum_i x[i] * y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    /// y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    /// out[i] = a * x[i] + b * y[i]; out may alias x or y
    void (*scale_add)(double a, const double* x, double b, const double* y, double* out,
                      std::size_t n);
};

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale_add(double a, const double* x, double b, const double* y, double* out, std::size_t n);
}  // namespace scalar

bool isa_supported(Isa isa) noexcept;

/// Kernel table for a specific ISA. Throws std::invalid_argument when the ISA
/// is not compiled in or not supported by this CPU.
const KernelTable& table_for(Isa isa);

/// Table selected for this process.
const KernelTable& active();

inline double dot(std::span<const double> x, std::span<const double> y) {
    return active().dot(x.data(), y.data(), x.size());
}

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
    active().axpy(a, x.data(), y.data(), x.size());
}

inline void scale_add(double a, std::span<const double> x, double b, std::span<const double> y,
                      std::span<double> out) {
    active().scale_add(a, x.data(), b, y.data(), out.data(), x.size());
}

}  // namespace clonescope::kernels
