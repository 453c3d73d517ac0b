#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lsrank/ranking.hpp"

namespace lsrank {

// Ground-truth scores and the per-comparison noise variance sigma^2.  A
// pair measured w times carries variance sigma^2 / w on its running mean.
struct SyntheticModel {
  std::vector<double> phi_true;
  double sigma2 = 0.0;
  std::uint64_t seed = 0;
};

// G(n, p): each pair present independently with probability p, unit weight.
MultiGraph er_sample(int n, double p, std::uint64_t seed);

struct ErEnsemble {
  std::vector<std::pair<std::int64_t, double>> samples;  // (m, lambda2) rows
  double mean_m = 0.0;
  double mean_lambda2 = 0.0;
};

// Per-sample (m, lambda2) scatter; disconnected samples report lambda2 = 0.
ErEnsemble er_ensemble(int n, double p, int trials, std::uint64_t seed);

// Two cliques of `clique_size` vertices joined by `bridges` edges; stands in
// for conference-clustered schedules.
MultiGraph bridged_cliques(int clique_size, int bridges);

// Draws y_k ~ Normal((B phi)_k, sigma2 / w_k) independently per support edge.
PairwiseData synth_scores(const MultiGraph& g, const SyntheticModel& model);

// Draws one fresh comparison ~ Normal(phi_j - phi_i, sigma2), folds it into
// the running mean y_e and increments w_e.  The overload without an engine
// derives one deterministically from (model.seed, e.k, current w_e).
class SplitMix64;
PairwiseData increment_observation(const PairwiseData& data, const EdgeKey& e,
                                   const SyntheticModel& model);
PairwiseData increment_observation(const PairwiseData& data, const EdgeKey& e,
                                   const SyntheticModel& model,
                                   std::uint64_t stream);

struct ExperimentReport {
  struct Row {
    std::string strategy;  // "greedy" | "random"
    int trial;
    std::int64_t xi;
    double l2;
    double ktau;
    double lambda2;
  };
  struct Aggregate {
    std::string strategy;
    std::int64_t xi;
    double l2_mean, l2_std;
    double ktau_mean, ktau_std;
    double lambda2_mean, lambda2_std;
  };
  std::vector<Row> rows;
  std::vector<Aggregate> aggregates;
  std::int64_t xi_max = 0;
  int trials = 0;
  std::uint64_t seed = 0;
};

// Grows g0 by xi_max unit comparisons under the greedy and random
// strategies; at each checkpoint records L2 error and Kendall-tau against
// the centered ground truth plus lambda2.  The greedy edge sequence is
// data-independent and computed once, then reused across trials.  When
// `regenerate` is set, all comparison data is redrawn wholesale at each
// checkpoint instead of accumulating running means, and each checkpoint's
// error metrics are averaged over `eval_redraws` independent redraws.
ExperimentReport active_vs_random(const MultiGraph& g0,
                                  const SyntheticModel& model,
                                  std::int64_t xi_max, int trials,
                                  std::vector<std::int64_t> checkpoints,
                                  bool regenerate = false,
                                  int eval_redraws = 1);

// Relative Frobenius distance between the empirical covariance of the
// estimator over `trials` noise draws and the closed-form sigma^2 L^+.
double covariance_check(const MultiGraph& g, double sigma2, int trials,
                        std::uint64_t seed);

}  // namespace lsrank
