#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Dense inner-loop kernels with a scalar reference implementation and an
// AVX2 variant selected once at startup.  Both variants produce bitwise
// identical elementwise results for row_max_gap (same per-lane arithmetic);
// dot/axpy may differ only in accumulation order.
namespace lsrank::kernels {

double dot(std::span<const double> a, std::span<const double> b);

// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

// Over j in [0, f.size()) with mask[j] != 0, maximizes (fi - f[j])^2.
// Returns the first index attaining the maximum, or -1 if no j admissible.
struct RowMax {
  std::ptrdiff_t index = -1;
  double gap2 = -1.0;
};
RowMax row_max_gap(double fi, std::span<const double> f,
                   std::span<const std::uint8_t> mask);

// "avx2" or "scalar"; resolved once from CPU features (override by setting
// LSRANK_NO_SIMD in the environment before first use).
std::string_view active_backend();

namespace detail {
double dot_scalar(std::span<const double> a, std::span<const double> b);
void axpy_scalar(double alpha, std::span<const double> x, std::span<double> y);
RowMax row_max_gap_scalar(double fi, std::span<const double> f,
                          std::span<const std::uint8_t> mask);
#if defined(LSRANK_HAVE_AVX2)
double dot_avx2(std::span<const double> a, std::span<const double> b);
void axpy_avx2(double alpha, std::span<const double> x, std::span<double> y);
RowMax row_max_gap_avx2(double fi, std::span<const double> f,
                        std::span<const std::uint8_t> mask);
#endif
}  // namespace detail

}  // namespace lsrank::kernels
