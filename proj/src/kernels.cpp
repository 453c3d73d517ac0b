#include "lsrank/kernels.hpp"

#include <cstdlib>

namespace lsrank::kernels {

namespace {

struct Backend {
  double (*dot)(std::span<const double>, std::span<const double>);
  void (*axpy)(double, std::span<const double>, std::span<double>);
  RowMax (*row_max_gap)(double, std::span<const double>,
                        std::span<const std::uint8_t>);
  std::string_view name;
};

Backend select_backend() {
  Backend scalar{detail::dot_scalar, detail::axpy_scalar,
                 detail::row_max_gap_scalar, "scalar"};
#if defined(LSRANK_HAVE_AVX2)
  if (std::getenv("LSRANK_NO_SIMD") == nullptr &&
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return Backend{detail::dot_avx2, detail::axpy_avx2,
                   detail::row_max_gap_avx2, "avx2"};
  }
#endif
  return scalar;
}

const Backend& backend() {
  static const Backend b = select_backend();
  return b;
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  return backend().dot(a, b);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  backend().axpy(alpha, x, y);
}

RowMax row_max_gap(double fi, std::span<const double> f,
                   std::span<const std::uint8_t> mask) {
  return backend().row_max_gap(fi, f, mask);
}

std::string_view active_backend() { return backend().name; }

}  // namespace lsrank::kernels
