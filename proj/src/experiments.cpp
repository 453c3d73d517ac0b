#include "lsrank/experiments.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "lsrank/design.hpp"
#include "lsrank/spectral.hpp"

namespace lsrank {

namespace {

// splitmix64: substream derivation so trial results are order-independent.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return mix(mix(seed ^ mix(a)) ^ mix(b));
}

}  // namespace

MultiGraph er_sample(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("er_sample: p must be in [0, 1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<std::pair<EdgeKey, std::int64_t>> edges;
  std::int64_t npairs = pair_count(n);
  for (std::int64_t k = 0; k < npairs; ++k) {
    double u = uni(rng);
    if (u < p) edges.emplace_back(edge_from_index(k, n), 1);
  }
  return MultiGraph(n, edges);
}

ErEnsemble er_ensemble(int n, double p, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("er_ensemble: trials >= 1");
  ErEnsemble out;
  for (int t = 0; t < trials; ++t) {
    MultiGraph g = er_sample(n, p, substream(seed, t));
    auto ds = g.degree_stats();
    double lam2 = 0.0;
    if (g.is_connected()) lam2 = fiedler(g).value;
    out.samples.emplace_back(ds.edge_count, lam2);
    out.mean_m += static_cast<double>(ds.edge_count);
    out.mean_lambda2 += lam2;
  }
  out.mean_m /= trials;
  out.mean_lambda2 /= trials;
  return out;
}

MultiGraph bridged_cliques(int clique_size, int bridges) {
  if (clique_size < 2) throw std::invalid_argument("bridged_cliques: size >= 2");
  int n = 2 * clique_size;
  if (bridges < 1 || bridges > clique_size)
    throw std::invalid_argument("bridged_cliques: 1 <= bridges <= clique_size");
  std::vector<std::pair<EdgeKey, std::int64_t>> edges;
  for (int off : {0, clique_size})
    for (int i = 0; i < clique_size; ++i)
      for (int j = i + 1; j < clique_size; ++j)
        edges.emplace_back(edge_index(off + i, off + j, n), 1);
  for (int b = 0; b < bridges; ++b)
    edges.emplace_back(edge_index(b, clique_size + b, n), 1);
  return MultiGraph(n, edges);
}

PairwiseData synth_scores(const MultiGraph& g, const SyntheticModel& model) {
  int n = g.n();
  if (static_cast<int>(model.phi_true.size()) != n)
    throw std::invalid_argument("synth_scores: phi_true length != n");
  PairwiseData data{g, {}};
  double sd = std::sqrt(model.sigma2);
  for (const auto& [k, w] : g.edges()) {
    EdgeKey e = edge_from_index(k, n);
    double mean = model.phi_true[e.j] - model.phi_true[e.i];
    // y is the running mean of w unit comparisons; the t-th comparison on a
    // pair draws from substream (seed, k, t).  Two designs sharing an edge
    // therefore share its first min(w, w') draws (common random numbers),
    // and incrementally adding the (w+1)-th observation reproduces exactly
    // what a from-scratch sample at weight w+1 would contain.
    double acc = 0.0;
    for (std::int64_t t = 0; t < w; ++t) {
      std::mt19937_64 rng(substream(model.seed, static_cast<std::uint64_t>(k),
                                    static_cast<std::uint64_t>(t)));
      std::normal_distribution<double> gauss;
      acc += mean + sd * gauss(rng);
    }
    data.y[k] = acc / static_cast<double>(w);
  }
  return data;
}

namespace {

PairwiseData increment_with(const PairwiseData& data, const EdgeKey& e,
                            const SyntheticModel& model, std::mt19937_64& rng) {
  int n = data.graph.n();
  if (static_cast<int>(model.phi_true.size()) != n)
    throw std::invalid_argument("increment_observation: phi_true length != n");
  std::normal_distribution<double> gauss;
  double mean = model.phi_true[e.j] - model.phi_true[e.i];
  double draw = mean + std::sqrt(model.sigma2) * gauss(rng);
  std::int64_t w_old = data.graph.weight(e);
  PairwiseData out{data.graph.add_weight(e, 1), data.y};
  double y_old = w_old > 0 ? data.y.at(e.k) : 0.0;
  out.y[e.k] = (y_old * static_cast<double>(w_old) + draw) /
               static_cast<double>(w_old + 1);
  return out;
}

}  // namespace

PairwiseData increment_observation(const PairwiseData& data, const EdgeKey& e,
                                   const SyntheticModel& model,
                                   std::uint64_t stream) {
  std::mt19937_64 rng(stream);
  return increment_with(data, e, model, rng);
}

PairwiseData increment_observation(const PairwiseData& data, const EdgeKey& e,
                                   const SyntheticModel& model) {
  return increment_observation(
      data, e, model,
      substream(model.seed, static_cast<std::uint64_t>(e.k),
                static_cast<std::uint64_t>(data.graph.weight(e))));
}

namespace {

struct Stat {
  double sum = 0.0, sumsq = 0.0;
  int count = 0;
  void add(double x) {
    sum += x;
    sumsq += x * x;
    ++count;
  }
  double mean() const { return count ? sum / count : 0.0; }
  double stddev() const {
    if (count < 2) return 0.0;
    double m = mean();
    return std::sqrt(std::max(0.0, (sumsq - count * m * m) / (count - 1)));
  }
};

}  // namespace

ExperimentReport active_vs_random(const MultiGraph& g0,
                                  const SyntheticModel& model,
                                  std::int64_t xi_max, int trials,
                                  std::vector<std::int64_t> checkpoints,
                                  bool regenerate, int eval_redraws) {
  if (trials < 1) throw std::invalid_argument("active_vs_random: trials >= 1");
  if (xi_max < 0) throw std::invalid_argument("active_vs_random: xi_max >= 0");
  if (eval_redraws < 1)
    throw std::invalid_argument("active_vs_random: eval_redraws >= 1");
  if (checkpoints.empty()) checkpoints = {0, xi_max};
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()),
                    checkpoints.end());
  for (std::int64_t c : checkpoints)
    if (c < 0 || c > xi_max)
      throw std::invalid_argument("active_vs_random: checkpoint outside [0, xi_max]");

  // The greedy edge sequence does not depend on the observed scores, so it
  // is computed once and reused across trials.
  DesignResult greedy = greedy_augment(g0, xi_max);
  std::vector<EdgeKey> greedy_seq;
  for (const auto& [e, mult] : greedy.added)
    for (std::int64_t c = 0; c < mult; ++c) greedy_seq.push_back(e);

  ExperimentReport rep;
  rep.xi_max = xi_max;
  rep.trials = trials;
  rep.seed = model.seed;

  std::int64_t npairs = g0.pair_count();
  std::vector<double> phi_true = model.phi_true;

  auto agg_index = [&](const std::string& strategy, std::int64_t xi) {
    return strategy + "@" + std::to_string(xi);
  };
  std::vector<std::pair<std::string, std::array<Stat, 3>>> aggs;
  auto agg_slot = [&](const std::string& strategy,
                      std::int64_t xi) -> std::array<Stat, 3>& {
    std::string key = agg_index(strategy, xi);
    for (auto& [k, s] : aggs)
      if (k == key) return s;
    aggs.emplace_back(key, std::array<Stat, 3>{});
    return aggs.back().second;
  };

  for (int t = 0; t < trials; ++t) {
    SyntheticModel trial_model = model;
    trial_model.seed = substream(model.seed, t, 1);
    PairwiseData base = synth_scores(g0, trial_model);

    for (const std::string& strategy : {std::string("greedy"), std::string("random")}) {
      std::mt19937_64 rng(substream(model.seed, t,
                                    strategy == "greedy" ? 2 : 3));
      std::uniform_int_distribution<std::int64_t> pick(0, npairs - 1);
      PairwiseData data = base;
      std::size_t ck = 0;
      for (std::int64_t xi = 0; xi <= xi_max; ++xi) {
        if (xi > 0) {
          EdgeKey e = strategy == "greedy"
                          ? greedy_seq[xi - 1]
                          : edge_from_index(pick(rng), g0.n());
          // Substream-derived draw: the running state after this increment
          // is identical to a from-scratch synth_scores sample of the same
          // graph, so both strategies share noise on shared observations.
          data = increment_observation(data, e, trial_model);
        }
        if (ck < checkpoints.size() && checkpoints[ck] == xi) {
          double l2 = 0.0, kt = 0.0;
          if (regenerate) {
            // Wholesale redraws; averaging over eval_redraws of them keeps
            // the estimand but shrinks the per-trial Monte Carlo noise so a
            // paired comparison mostly reflects design quality.
            for (int r = 0; r < eval_redraws; ++r) {
              SyntheticModel regen = trial_model;
              regen.seed = substream(substream(trial_model.seed, xi, 4), r);
              auto est = lsq_rank(synth_scores(data.graph, regen));
              l2 += l2_error(est.phi, phi_true);
              kt += kendall_tau(est.phi, phi_true);
            }
            l2 /= eval_redraws;
            kt /= eval_redraws;
          } else {
            auto est = lsq_rank(data);
            l2 = l2_error(est.phi, phi_true);
            kt = kendall_tau(est.phi, phi_true);
          }
          double lam2 = strategy == "greedy"
                            ? greedy.lambda2_trajectory[xi]
                            : fiedler(data.graph).value;
          rep.rows.push_back({strategy, t, xi, l2, kt, lam2});
          auto& slot = agg_slot(strategy, xi);
          slot[0].add(l2);
          slot[1].add(kt);
          slot[2].add(lam2);
          ++ck;
        }
      }
    }
  }

  for (const std::string& strategy : {std::string("greedy"), std::string("random")})
    for (std::int64_t c : checkpoints) {
      auto& slot = agg_slot(strategy, c);
      rep.aggregates.push_back({strategy, c, slot[0].mean(), slot[0].stddev(),
                                slot[1].mean(), slot[1].stddev(),
                                slot[2].mean(), slot[2].stddev()});
    }
  return rep;
}

double covariance_check(const MultiGraph& g, double sigma2, int trials,
                        std::uint64_t seed) {
  int n = g.n();
  if (n > 10)
    throw std::invalid_argument("covariance_check: n <= 10 (dense oracle)");
  if (!g.is_connected())
    throw std::invalid_argument("covariance_check: graph must be connected");

  // Dense pseudoinverse oracle sigma^2 L^+.
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [k, w] : g.edges()) {
    EdgeKey e = edge_from_index(k, n);
    double wd = static_cast<double>(w);
    l(e.i, e.i) += wd;
    l(e.j, e.j) += wd;
    l(e.i, e.j) -= wd;
    l(e.j, e.i) -= wd;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
  Eigen::MatrixXd pinv = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    if (es.eigenvalues()(i) > 1e-12)
      pinv += es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose() /
              es.eigenvalues()(i);
  Eigen::MatrixXd oracle = sigma2 * pinv;

  SyntheticModel model;
  model.phi_true.assign(n, 0.0);
  model.sigma2 = sigma2;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd mean_acc = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::VectorXd> draws;
  draws.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    model.seed = substream(seed, t);
    auto est = lsq_rank(synth_scores(g, model));
    Eigen::Map<Eigen::VectorXd> phi(est.phi.data(), n);
    draws.push_back(phi);
    mean_acc += phi;
  }
  Eigen::VectorXd mean = mean_acc / trials;
  for (const auto& phi : draws) {
    Eigen::VectorXd c = phi - mean;
    sum += c * c.transpose();
  }
  Eigen::MatrixXd emp = sum / std::max(1, trials - 1);
  double denom = oracle.norm();
  if (denom == 0.0) return emp.norm();
  return (emp - oracle).norm() / denom;
}

}  // namespace lsrank
