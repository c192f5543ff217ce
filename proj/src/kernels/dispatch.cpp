#include <cstdlib>
#include <stdexcept>
#include <string>

#include "clonescope/kernels/kernels.hpp"

namespace clonescope::kernels {

#if defined(CLONESCOPE_HAVE_AVX2)
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale_add(double a, const double* x, double b, const double* y, double* out, std::size_t n);
}  // namespace avx2
#endif

#if defined(CLONESCOPE_HAVE_NEON)
namespace neon {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale_add(double a, const double* x, double b, const double* y, double* out, std::size_t n);
}  // namespace neon
#endif

namespace {

constexpr KernelTable kScalar{Isa::Scalar, scalar::dot, scalar::axpy, scalar::scale_add};
#if defined(CLONESCOPE_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, avx2::dot, avx2::axpy, avx2::scale_add};
#endif
#if defined(CLONESCOPE_HAVE_NEON)
constexpr KernelTable kNeon{Isa::Neon, neon::dot, neon::axpy, neon::scale_add};
#endif

const KernelTable& select() {
    if (const char* forced = std::getenv("CLONESCOPE_SIMD")) {
        const std::string name = forced;
        if (name == "scalar") return kScalar;
        if (name == "avx2" && isa_supported(Isa::Avx2)) return table_for(Isa::Avx2);
        if (name == "neon" && isa_supported(Isa::Neon)) return table_for(Isa::Neon);
    }
    if (isa_supported(Isa::Avx2)) return table_for(Isa::Avx2);
    if (isa_supported(Isa::Neon)) return table_for(Isa::Neon);
    return kScalar;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "unknown";
}

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2:
#if defined(CLONESCOPE_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::Neon:
#if defined(CLONESCOPE_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& table_for(Isa isa) {
    if (!isa_supported(isa))
        throw std::invalid_argument("kernel variant not available: " + std::string(isa_name(isa)));
    switch (isa) {
#if defined(CLONESCOPE_HAVE_AVX2)
        case Isa::Avx2: return kAvx2;
#endif
#if defined(CLONESCOPE_HAVE_NEON)
        case Isa::Neon: return kNeon;
#endif
        default: return kScalar;
    }
}

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace clonescope::kernels
