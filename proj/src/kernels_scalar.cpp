#include "lsrank/kernels.hpp"

namespace lsrank::kernels::detail {

double dot_scalar(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

RowMax row_max_gap_scalar(double fi, std::span<const double> f,
                          std::span<const std::uint8_t> mask) {
  RowMax best;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (!mask[j]) continue;
    double d = fi - f[j];
    double g = d * d;
    if (g > best.gap2) {
      best.gap2 = g;
      best.index = static_cast<std::ptrdiff_t>(j);
    }
  }
  return best;
}

}  // namespace lsrank::kernels::detail
