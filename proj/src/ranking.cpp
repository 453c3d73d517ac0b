#include "lsrank/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lsrank/errors.hpp"
#include "lsrank/kernels.hpp"

namespace lsrank {

void PairwiseData::validate() const {
  if (y.size() != graph.edges().size())
    throw std::invalid_argument("PairwiseData: support(y) != support(w)");
  for (const auto& [k, w] : graph.edges())
    if (!y.count(k))
      throw std::invalid_argument("PairwiseData: missing y for edge index " +
                                  std::to_string(k));
}

namespace {

void project_mean(std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

// b = B^t W y: b_i accumulates -w_k y_k at the tail and +w_k y_k at the head.
std::vector<double> normal_rhs(const PairwiseData& data) {
  int n = data.graph.n();
  std::vector<double> b(n, 0.0);
  for (const auto& [k, w] : data.graph.edges()) {
    EdgeKey e = edge_from_index(k, n);
    double wy = static_cast<double>(w) * data.y.at(k);
    b[e.i] -= wy;
    b[e.j] += wy;
  }
  return b;
}

}  // namespace

RankingEstimate lsq_rank(const PairwiseData& data, double tol) {
  data.validate();
  const MultiGraph& g = data.graph;
  int n = g.n();
  auto comps = g.components();
  if (comps.size() > 1)
    throw NotConnectedError(
        "lsq_rank: graph has " + std::to_string(comps.size()) +
            " components; ranking is not identifiable",
        comps);

  auto ds = g.degree_stats();
  std::vector<double> precond(n);
  for (int i = 0; i < n; ++i)
    precond[i] = 1.0 / static_cast<double>(ds.degree[i]);

  std::vector<double> b = normal_rhs(data);
  project_mean(b);
  double bnorm = std::sqrt(kernels::dot(b, b));

  std::vector<double> phi(n, 0.0), r = b, z(n), p(n), ap(n);
  for (int i = 0; i < n; ++i) z[i] = r[i] * precond[i];
  project_mean(z);
  p = z;
  double rz = kernels::dot(r, z);
  int iters = 0;
  int cap = 10 * n;
  if (bnorm > 0.0) {
    for (; iters < cap; ++iters) {
      double rnorm = std::sqrt(kernels::dot(r, r));
      if (rnorm <= tol * bnorm) break;
      g.laplacian_apply(p, ap);
      double pap = kernels::dot(p, ap);
      if (pap <= 0.0) break;  // numerically exhausted
      double alpha = rz / pap;
      kernels::axpy(alpha, p, phi);
      kernels::axpy(-alpha, ap, r);
      project_mean(r);
      for (int i = 0; i < n; ++i) z[i] = r[i] * precond[i];
      project_mean(z);
      double rz_new = kernels::dot(r, z);
      double beta = rz_new / rz;
      rz = rz_new;
      for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    double rnorm = std::sqrt(kernels::dot(r, r));
    if (rnorm > tol * bnorm && iters == cap)
      throw SolverError("lsq_rank: CG failed to converge", phi, rnorm);
  }
  project_mean(phi);

  // Weighted data-space residual ||B phi - y||_w / ||y||_w.
  double num = 0.0, den = 0.0;
  for (const auto& [k, w] : g.edges()) {
    EdgeKey e = edge_from_index(k, n);
    double yk = data.y.at(k);
    double rk = (phi[e.j] - phi[e.i]) - yk;
    num += static_cast<double>(w) * rk * rk;
    den += static_cast<double>(w) * yk * yk;
  }
  RankingEstimate est;
  est.phi = std::move(phi);
  est.relative_residual = den > 0.0 ? std::sqrt(num / den) : 0.0;
  est.solver_iterations = iters;
  return est;
}

Histogram residual_histogram(const PairwiseData& data,
                             const RankingEstimate& est, int bins) {
  if (bins < 1) throw std::invalid_argument("residual_histogram: bins >= 1");
  int n = data.graph.n();
  Histogram h;
  double wnorm2 = 0.0;
  for (const auto& [k, w] : data.graph.edges()) {
    EdgeKey e = edge_from_index(k, n);
    double rk = data.y.at(k) - (est.phi[e.j] - est.phi[e.i]);
    h.residuals.push_back(rk);
    wnorm2 += static_cast<double>(w) * rk * rk;
  }
  h.weighted_residual_norm = std::sqrt(wnorm2);
  double lo = 0.0, hi = 0.0;
  if (!h.residuals.empty()) {
    auto [mn, mx] = std::minmax_element(h.residuals.begin(), h.residuals.end());
    lo = *mn;
    hi = *mx;
  }
  if (hi <= lo) hi = lo + 1.0;  // degenerate range: single bin still well-formed
  h.counts.assign(bins, 0);
  h.bin_edges.resize(bins + 1);
  double step = (hi - lo) / bins;
  for (int b = 0; b <= bins; ++b) h.bin_edges[b] = lo + step * b;
  for (double rk : h.residuals) {
    int b = static_cast<int>((rk - lo) / step);
    b = std::clamp(b, 0, bins - 1);
    ++h.counts[b];
  }
  return h;
}

double kendall_tau(std::span<const double> phi1, std::span<const double> phi2) {
  if (phi1.size() != phi2.size())
    throw std::invalid_argument("kendall_tau: length mismatch");
  std::size_t n = phi1.size();
  if (n < 2) throw std::invalid_argument("kendall_tau: need n >= 2");
  std::int64_t disagree = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double a = phi1[i] - phi1[j];
      double b = phi2[i] - phi2[j];
      if ((a > 0 && b < 0) || (a < 0 && b > 0)) ++disagree;
    }
  return static_cast<double>(disagree) /
         (static_cast<double>(n) * (n - 1) / 2.0);
}

double l2_error(std::span<const double> phi_hat,
                std::span<const double> phi_true) {
  if (phi_hat.size() != phi_true.size())
    throw std::invalid_argument("l2_error: length mismatch");
  std::size_t n = phi_hat.size();
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m1 += phi_hat[i];
    m2 += phi_true[i];
  }
  m1 /= n;
  m2 /= n;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = (phi_hat[i] - m1) - (phi_true[i] - m2);
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace lsrank
