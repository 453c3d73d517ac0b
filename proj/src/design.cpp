#include "lsrank/design.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "lsrank/errors.hpp"
#include "lsrank/kernels.hpp"

namespace lsrank {

CriteriaReport criteria(const MultiGraph& g) {
  CriteriaReport rep;
  auto ds = g.degree_stats();
  rep.t = static_cast<double>(ds.total_weight);
  rep.trace = 2.0 * rep.t;
  auto spectrum = full_spectrum(g);
  rep.j_e = std::max(0.0, spectrum[1]);
  if (spectrum[1] < 1e-10) {
    rep.j_e = 0.0;
    rep.defined = false;
    rep.j_a = 0.0;
    rep.j_d = 0.0;
    return rep;
  }
  int n = g.n();
  double inv_sum = 0.0, log_sum = 0.0;
  for (int i = 1; i < n; ++i) {
    inv_sum += 1.0 / spectrum[i];
    log_sum += std::log(spectrum[i]);
  }
  rep.j_a = 1.0 / (inv_sum / n);
  rep.j_d = log_sum / n;
  return rep;
}

namespace {

// Argmax of (F_i - F_j)^2 over admissible pairs, lowest edge index on ties.
// admissible is an N-byte mask indexed by edge index.
struct BestEdge {
  std::int64_t k = -1;
  double gap2 = -1.0;
};

BestEdge scan_pairs(const std::vector<double>& f,
                    const std::vector<std::uint8_t>& admissible, int n) {
  BestEdge best;
  for (int i = 0; i < n - 1; ++i) {
    std::int64_t base = edge_index(i, i + 1, n).k;
    std::size_t row_len = static_cast<std::size_t>(n - 1 - i);
    auto rm = kernels::row_max_gap(
        f[i], std::span<const double>(f.data() + i + 1, row_len),
        std::span<const std::uint8_t>(admissible.data() + base, row_len));
    if (rm.index >= 0 && rm.gap2 > best.gap2) {
      best.gap2 = rm.gap2;
      best.k = base + rm.index;
    }
  }
  return best;
}

void record_addition(DesignResult& res, const EdgeKey& e) {
  if (!res.added.empty() && res.added.back().first.k == e.k)
    ++res.added.back().second;
  else
    res.added.emplace_back(e, 1);
}

}  // namespace

DesignResult greedy_augment(const MultiGraph& g, std::int64_t xi,
                            const std::unordered_set<std::int64_t>& forbidden,
                            bool warm_start, double tol) {
  if (xi < 0) throw std::invalid_argument("greedy_augment: xi must be >= 0");
  auto comps = g.components();
  if (comps.size() > 1)
    throw NotConnectedError("greedy_augment: input graph is disconnected",
                            comps);
  int n = g.n();
  std::int64_t npairs = g.pair_count();
  std::vector<std::uint8_t> admissible(npairs, 1);
  std::int64_t n_admissible = npairs;
  for (std::int64_t k : forbidden)
    if (k >= 0 && k < npairs && admissible[k]) {
      admissible[k] = 0;
      --n_admissible;
    }
  if (xi > 0 && n_admissible == 0)
    throw std::runtime_error("greedy_augment: all candidate edges forbidden");

  DesignResult res(g);
  res.strategy = Strategy::kGreedy;
  res.criteria_before = criteria(g);

  EigOptions opts;
  opts.tol = tol;
  std::vector<double> prev_fiedler;
  auto eigs = smallest_eigs(res.augmented, 3, opts);
  res.lambda2_trajectory.push_back(eigs[1].value);
  for (std::int64_t step = 0; step < xi; ++step) {
    const std::vector<double>& f = eigs[1].vector;
    auto best = scan_pairs(f, admissible, n);
    if (best.k < 0)
      throw std::runtime_error("greedy_augment: no admissible edge");
    EdgeKey e = edge_from_index(best.k, n);
    res.augmented = res.augmented.add_weight(e, 1);
    record_addition(res, e);

    bool multiple = eigs[2].value - eigs[1].value < 1e-6;
    prev_fiedler = f;
    EigOptions step_opts = opts;
    if (warm_start && !multiple) step_opts.warm_start = &prev_fiedler;
    eigs = smallest_eigs(res.augmented, 3, step_opts);
    res.lambda2_trajectory.push_back(eigs[1].value);
  }
  res.criteria_after = criteria(res.augmented);
  return res;
}

DesignResult random_augment(const MultiGraph& g, std::int64_t xi,
                            const std::unordered_set<std::int64_t>& forbidden,
                            std::uint64_t seed, double tol) {
  if (xi < 0) throw std::invalid_argument("random_augment: xi must be >= 0");
  int n = g.n();
  std::int64_t npairs = g.pair_count();
  std::vector<std::int64_t> pool;
  pool.reserve(npairs);
  for (std::int64_t k = 0; k < npairs; ++k)
    if (!forbidden.count(k)) pool.push_back(k);
  if (xi > 0 && pool.empty())
    throw std::runtime_error("random_augment: no admissible pairs");

  DesignResult res(g);
  res.strategy = Strategy::kRandom;
  res.criteria_before = criteria(g);
  EigOptions opts;
  opts.tol = tol;
  res.lambda2_trajectory.push_back(fiedler(res.augmented, opts).value);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> uni(0, pool.size() - 1);
  for (std::int64_t step = 0; step < xi; ++step) {
    EdgeKey e = edge_from_index(pool[uni(rng)], n);
    res.augmented = res.augmented.add_weight(e, 1);
    record_addition(res, e);
    res.lambda2_trajectory.push_back(fiedler(res.augmented, opts).value);
  }
  res.criteria_after = criteria(res.augmented);
  return res;
}

}  // namespace lsrank
