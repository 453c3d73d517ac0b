#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "lsrank/errors.hpp"
#include "lsrank/multigraph.hpp"
#include "lsrank/ranking.hpp"

using namespace lsrank;

namespace {

MultiGraph random_connected(std::mt19937_64& rng, int n, int max_w = 3) {
  std::vector<std::pair<EdgeKey, std::int64_t>> edges;
  for (int i = 1; i < n; ++i)
    edges.emplace_back(edge_index(static_cast<int>(rng() % i), i, n),
                       1 + static_cast<std::int64_t>(rng() % max_w));
  for (std::int64_t k = 0; k < pair_count(n); ++k)
    if (rng() % 3 == 0)
      edges.emplace_back(edge_from_index(k, n),
                         1 + static_cast<std::int64_t>(rng() % max_w));
  return MultiGraph(n, edges);
}

// Dense oracle: phi = (B^t W B)^+ B^t W y via eigendecomposition.
std::vector<double> pinv_solve(const PairwiseData& data) {
  int n = data.graph.n();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (const auto& [k, w] : data.graph.edges()) {
    EdgeKey e = edge_from_index(k, n);
    double wd = static_cast<double>(w);
    l(e.i, e.i) += wd;
    l(e.j, e.j) += wd;
    l(e.i, e.j) -= wd;
    l(e.j, e.i) -= wd;
    double wy = wd * data.y.at(k);
    rhs(e.i) -= wy;
    rhs(e.j) += wy;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i)
    if (es.eigenvalues()(i) > 1e-10)
      phi += es.eigenvectors().col(i) *
             (es.eigenvectors().col(i).dot(rhs) / es.eigenvalues()(i));
  return {phi.data(), phi.data() + n};
}

}  // namespace

TEST_CASE("triangle with cyclically inconsistent scores: known solution") {
  // y = (1, 1, 1) on K_3: phi = (-2/3, 0, 2/3), residuals (1/3, -1/3, 1/3).
  MultiGraph g(3, {{edge_index(0, 1, 3), 1},
                   {edge_index(0, 2, 3), 1},
                   {edge_index(1, 2, 3), 1}});
  PairwiseData data{g, {{0, 1.0}, {1, 1.0}, {2, 1.0}}};
  auto est = lsq_rank(data);
  REQUIRE(est.phi.size() == 3);
  CHECK(est.phi[0] == doctest::Approx(-2.0 / 3).epsilon(1e-9));
  CHECK(est.phi[1] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(est.phi[2] == doctest::Approx(2.0 / 3).epsilon(1e-9));

  auto hist = residual_histogram(data, est, 3);
  REQUIRE(hist.residuals.size() == 3);
  CHECK(hist.residuals[0] == doctest::Approx(1.0 / 3).epsilon(1e-9));
  CHECK(hist.residuals[1] == doctest::Approx(-1.0 / 3).epsilon(1e-9));
  CHECK(hist.residuals[2] == doctest::Approx(1.0 / 3).epsilon(1e-9));
  CHECK(hist.weighted_residual_norm ==
        doctest::Approx(std::sqrt(1.0 / 3)).epsilon(1e-9));
  CHECK(std::accumulate(hist.counts.begin(), hist.counts.end(),
                        std::int64_t{0}) == 3);
}

TEST_CASE("noise-free consistent scores are recovered exactly") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 3 + static_cast<int>(rng() % 10);
    MultiGraph g = random_connected(rng, n);
    std::vector<double> phi(n);
    for (auto& x : phi) x = uni(rng);
    double mean = std::accumulate(phi.begin(), phi.end(), 0.0) / n;
    for (auto& x : phi) x -= mean;

    PairwiseData data{g, {}};
    for (const auto& [k, w] : g.edges()) {
      EdgeKey e = edge_from_index(k, n);
      data.y[k] = phi[e.j] - phi[e.i];
    }
    auto est = lsq_rank(data);
    for (int i = 0; i < n; ++i)
      CHECK(est.phi[i] == doctest::Approx(phi[i]).epsilon(1e-8));
    CHECK(est.relative_residual < 1e-8);
  }
}

TEST_CASE("lsq_rank matches the dense pseudoinverse oracle on noisy data") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 100; ++trial) {
    int n = 3 + static_cast<int>(rng() % 6);
    MultiGraph g = random_connected(rng, n);
    PairwiseData data{g, {}};
    for (const auto& [k, w] : g.edges()) data.y[k] = gauss(rng);
    auto est = lsq_rank(data);
    auto oracle = pinv_solve(data);
    for (int i = 0; i < n; ++i)
      CHECK(est.phi[i] == doctest::Approx(oracle[i]).epsilon(1e-7));
    double s = std::accumulate(est.phi.begin(), est.phi.end(), 0.0);
    CHECK(std::abs(s) < 1e-9);
  }
}

TEST_CASE("disconnected input raises NotConnectedError with components") {
  MultiGraph h(4, {{edge_index(0, 1, 4), 1}, {edge_index(2, 3, 4), 1}});
  PairwiseData data{h, {{edge_index(0, 1, 4).k, 1.0},
                        {edge_index(2, 3, 4).k, 1.0}}};
  try {
    lsq_rank(data);
    FAIL("expected NotConnectedError");
  } catch (const NotConnectedError& e) {
    REQUIRE(e.components().size() == 2);
    CHECK(e.components()[0] == std::vector<int>{0, 1});
    CHECK(e.components()[1] == std::vector<int>{2, 3});
  }
}

TEST_CASE("validate rejects mismatched y support") {
  MultiGraph g(3, {{edge_index(0, 1, 3), 1}, {edge_index(1, 2, 3), 1}});
  PairwiseData missing{g, {{edge_index(0, 1, 3).k, 1.0}}};
  CHECK_THROWS_AS(missing.validate(), std::invalid_argument);
  PairwiseData extra{g, {{edge_index(0, 1, 3).k, 1.0},
                         {edge_index(1, 2, 3).k, 1.0},
                         {edge_index(0, 2, 3).k, 1.0}}};
  CHECK_THROWS_AS(extra.validate(), std::invalid_argument);
}

TEST_CASE("kendall_tau worked values and invariances") {
  std::vector<double> a = {1.0, 2.0, 3.0, 4.0};
  std::vector<double> b = {4.0, 3.0, 2.0, 1.0};
  CHECK(kendall_tau(a, a) == doctest::Approx(0.0));
  CHECK(kendall_tau(a, b) == doctest::Approx(1.0));  // total reversal

  // One adjacent swap: exactly one of the 6 pairs disagrees.
  std::vector<double> c = {2.0, 1.0, 3.0, 4.0};
  CHECK(kendall_tau(a, c) == doctest::Approx(1.0 / 6));

  // Ties count as agreement.
  std::vector<double> t = {1.0, 1.0, 3.0, 4.0};
  CHECK(kendall_tau(a, t) == doctest::Approx(0.0));

  // Symmetry and shift/scale invariance.
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(6), y(6);
    for (auto& v : x) v = uni(rng);
    for (auto& v : y) v = uni(rng);
    double d = kendall_tau(x, y);
    CHECK(d == doctest::Approx(kendall_tau(y, x)));
    std::vector<double> x2 = x;
    for (auto& v : x2) v = 2.5 * v + 7.0;
    CHECK(kendall_tau(x2, y) == doctest::Approx(d));
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }

  CHECK_THROWS_AS(kendall_tau(a, std::vector<double>{1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(kendall_tau(std::vector<double>{1.0},
                              std::vector<double>{2.0}),
                  std::invalid_argument);
}

TEST_CASE("l2_error centers both inputs before comparing") {
  std::vector<double> a = {0.0, 1.0, 2.0};
  std::vector<double> b = {10.0, 11.0, 12.0};  // same shape, shifted
  CHECK(l2_error(a, b) == doctest::Approx(0.0));
  std::vector<double> c = {0.0, 0.0, 3.0};
  // centered a = (-1,0,1), centered c = (-1,-1,2): diff (0,1,-1).
  CHECK(l2_error(a, c) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("residual_histogram bins cover all residuals") {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> gauss;
  MultiGraph g = random_connected(rng, 8);
  PairwiseData data{g, {}};
  for (const auto& [k, w] : g.edges()) data.y[k] = gauss(rng);
  auto est = lsq_rank(data);
  auto hist = residual_histogram(data, est, 5);
  REQUIRE(hist.counts.size() == 5);
  REQUIRE(hist.bin_edges.size() == 6);
  CHECK(std::is_sorted(hist.bin_edges.begin(), hist.bin_edges.end()));
  std::int64_t total =
      std::accumulate(hist.counts.begin(), hist.counts.end(), std::int64_t{0});
  CHECK(total == static_cast<std::int64_t>(hist.residuals.size()));
  CHECK(hist.residuals.size() == g.edges().size());
}
