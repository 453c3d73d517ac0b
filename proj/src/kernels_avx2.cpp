#include <immintrin.h>

#include <cstring>

#include "lsrank/kernels.hpp"

namespace lsrank::kernels::detail {

double dot_avx2(std::span<const double> a, std::span<const double> b) {
  std::size_t n = a.size();
  std::size_t i = 0;
  __m256d acc = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4) {
    __m256d va = _mm256_loadu_pd(a.data() + i);
    __m256d vb = _mm256_loadu_pd(b.data() + i);
    acc = _mm256_fmadd_pd(va, vb, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_avx2(double alpha, std::span<const double> x, std::span<double> y) {
  std::size_t n = x.size();
  std::size_t i = 0;
  __m256d va = _mm256_set1_pd(alpha);
  for (; i + 4 <= n; i += 4) {
    __m256d vx = _mm256_loadu_pd(x.data() + i);
    __m256d vy = _mm256_loadu_pd(y.data() + i);
    _mm256_storeu_pd(y.data() + i, _mm256_fmadd_pd(va, vx, vy));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

RowMax row_max_gap_avx2(double fi, std::span<const double> f,
                        std::span<const std::uint8_t> mask) {
  // Pass 1: vectorized max of (fi - f[j])^2 over admissible j.  Masked-out
  // lanes are forced to -1 so they never win.  mul (not fma) keeps each lane
  // bitwise equal to the scalar reference, so the pass-2 equality rescan
  // finds the same first index.
  std::size_t n = f.size();
  std::size_t j = 0;
  __m256d vfi = _mm256_set1_pd(fi);
  __m256d vmax = _mm256_set1_pd(-1.0);
  __m256d neg1 = _mm256_set1_pd(-1.0);
  for (; j + 4 <= n; j += 4) {
    __m256d vf = _mm256_loadu_pd(f.data() + j);
    __m256d d = _mm256_sub_pd(vfi, vf);
    __m256d g = _mm256_mul_pd(d, d);
    int mbits;
    std::memcpy(&mbits, mask.data() + j, sizeof(mbits));
    __m128i mb = _mm_cvtsi32_si128(mbits);
    __m256i m64 = _mm256_cvtepu8_epi64(mb);
    __m256d keep = _mm256_castsi256_pd(
        _mm256_cmpgt_epi64(m64, _mm256_setzero_si256()));
    g = _mm256_blendv_pd(neg1, g, keep);
    vmax = _mm256_max_pd(vmax, g);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vmax);
  RowMax best;
  best.gap2 = lanes[0];
  for (int l = 1; l < 4; ++l)
    if (lanes[l] > best.gap2) best.gap2 = lanes[l];
  for (; j < n; ++j) {
    if (!mask[j]) continue;
    double d = fi - f[j];
    double g = d * d;
    if (g > best.gap2) best.gap2 = g;
  }
  if (best.gap2 < 0.0) return RowMax{};
  // Pass 2: first index attaining the max.
  for (std::size_t jj = 0; jj < n; ++jj) {
    if (!mask[jj]) continue;
    double d = fi - f[jj];
    if (d * d == best.gap2) {
      best.index = static_cast<std::ptrdiff_t>(jj);
      break;
    }
  }
  return best;
}

}  // namespace lsrank::kernels::detail
