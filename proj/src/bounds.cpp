#include "lsrank/bounds.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace lsrank {

DegreeBound degree_bound(const MultiGraph& g) {
  int n = g.n();
  auto ds = g.degree_stats();
  DegreeBound b;
  b.tight = static_cast<double>(n) * ds.d_minus / (n - 1);
  b.loose = 2.0 * static_cast<double>(ds.total_weight) / (n - 1);
  return b;
}

namespace {

double normalized_cut(const MultiGraph& g, const std::vector<char>& in_u,
                      int size_u) {
  int n = g.n();
  std::int64_t cut = 0;
  for (const auto& [k, w] : g.edges()) {
    EdgeKey e = edge_from_index(k, n);
    if (in_u[e.i] != in_u[e.j]) cut += w;
  }
  return static_cast<double>(n) * cut /
         (static_cast<double>(size_u) * (n - size_u));
}

}  // namespace

BoundReport cut_bound(const MultiGraph& g, const std::vector<int>& subset) {
  int n = g.n();
  if (subset.empty())
    throw std::invalid_argument("cut_bound: subset must be nontrivial");
  std::vector<char> in_u(n, 0);
  int size_u = 0;
  for (int v : subset) {
    if (v < 0 || v >= n)
      throw std::invalid_argument("cut_bound: vertex id out of range");
    if (!in_u[v]) {
      in_u[v] = 1;
      ++size_u;
    }
  }
  if (size_u >= n) throw std::invalid_argument("cut_bound: subset is all of V");
  BoundReport rep;
  rep.name = "cut";
  rep.value = normalized_cut(g, in_u, size_u);
  rep.certificate = subset;
  return rep;
}

BoundReport best_cut_bound_exhaustive(const MultiGraph& g) {
  int n = g.n();
  if (n > 20)
    throw std::invalid_argument(
        "best_cut_bound_exhaustive: n > 20; supply a subset via cut_bound");
  BoundReport best;
  best.name = "cut";
  best.value = std::numeric_limits<double>::infinity();
  // Vertex 0 stays outside U, halving the enumeration.
  std::uint32_t limit = 1u << (n - 1);
  std::vector<char> in_u(n, 0);
  for (std::uint32_t bits = 1; bits < limit; ++bits) {
    int size_u = 0;
    for (int v = 1; v < n; ++v) {
      in_u[v] = (bits >> (v - 1)) & 1u;
      size_u += in_u[v];
    }
    double val = normalized_cut(g, in_u, size_u);
    if (val < best.value) {
      best.value = val;
      std::vector<int> cert;
      for (int v = 1; v < n; ++v)
        if (in_u[v]) cert.push_back(v);
      best.certificate = std::move(cert);
    }
  }
  return best;
}

double er_bound(int n, double p, double eps) {
  if (n % 2 != 0)
    throw std::invalid_argument("er_bound: n must be even");
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("er_bound: eps must be in (0, 1]");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("er_bound: p must be in [0, 1]");
  return n * p + 4.0 / (static_cast<double>(n) * n) *
                     std::sqrt(2.0 * std::log(1.0 / eps));
}

BoundReport edge_connectivity_bound(const MultiGraph& g) {
  BoundReport rep;
  rep.name = "edge_connectivity";
  auto cut = global_min_cut(g);
  rep.value = static_cast<double>(cut.value);
  rep.certificate = cut.partition;
  for (const auto& [k, w] : g.edges())
    if (w > 1) {
      rep.warning = true;
      break;
    }
  return rep;
}

}  // namespace lsrank
