#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "lsrank/kernels.hpp"

using namespace lsrank;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = uni(rng);
  return v;
}

}  // namespace

TEST_CASE("dot and axpy match naive references") {
  std::mt19937_64 rng(3);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 33u, 257u}) {
    auto a = random_vec(rng, n);
    auto b = random_vec(rng, n);
    double ref = 0.0;
    for (std::size_t i = 0; i < n; ++i) ref += a[i] * b[i];
    CHECK(kernels::dot(a, b) == doctest::Approx(ref).epsilon(1e-12));

    auto y = random_vec(rng, n);
    auto y_ref = y;
    double alpha = 0.37;
    for (std::size_t i = 0; i < n; ++i) y_ref[i] += alpha * a[i];
    kernels::axpy(alpha, a, y);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(y[i] == doctest::Approx(y_ref[i]).epsilon(1e-14));
  }
}

TEST_CASE("row_max_gap: masking, tie-breaking, empty mask") {
  std::vector<double> f = {0.0, 3.0, -3.0, 1.0};
  std::vector<std::uint8_t> mask = {1, 1, 1, 1};
  // fi = 0: gaps are 0, 9, 9, 1 -> tie between 1 and 2, lowest index wins.
  auto r = kernels::row_max_gap(0.0, f, mask);
  CHECK(r.index == 1);
  CHECK(r.gap2 == doctest::Approx(9.0));

  mask = {1, 0, 1, 1};  // best admissible is index 2
  r = kernels::row_max_gap(0.0, f, mask);
  CHECK(r.index == 2);

  mask = {0, 0, 0, 0};
  r = kernels::row_max_gap(0.0, f, mask);
  CHECK(r.index == -1);
}

#if defined(LSRANK_HAVE_AVX2)
TEST_CASE("scalar and AVX2 variants agree" *
          doctest::skip(!__builtin_cpu_supports("avx2"))) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = rng() % 70;
    auto a = random_vec(rng, n);
    auto b = random_vec(rng, n);
    CHECK(kernels::detail::dot_avx2(a, b) ==
          doctest::Approx(kernels::detail::dot_scalar(a, b)).epsilon(1e-13));

    auto y1 = random_vec(rng, n);
    auto y2 = y1;
    kernels::detail::axpy_scalar(0.61, a, y1);
    kernels::detail::axpy_avx2(0.61, a, y2);
    // axpy may use fused multiply-add, so allow last-ulp differences.
    for (std::size_t i = 0; i < n; ++i)
      CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));

    std::vector<std::uint8_t> mask(n);
    for (auto& m : mask) m = rng() % 2;
    double fi = uni(rng);
    // Inject exact ties so the lowest-index rule is actually exercised.
    if (n >= 6 && trial % 2 == 0) {
      fi = 0.0;
      a[1] = 2.5;  // gap 6.25 beats anything drawn from [-2, 2]
      a[5] = -2.5;
      mask[1] = mask[5] = 1;
    }
    auto rs = kernels::detail::row_max_gap_scalar(fi, a, mask);
    auto rv = kernels::detail::row_max_gap_avx2(fi, a, mask);
    CHECK(rs.index == rv.index);
    CHECK(rs.gap2 == rv.gap2);  // bitwise, by construction
  }
}
#endif

TEST_CASE("active_backend reports a known variant") {
  auto b = kernels::active_backend();
  CHECK((b == "avx2" || b == "scalar"));
}
