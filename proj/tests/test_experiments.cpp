#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "lsrank/experiments.hpp"
#include "lsrank/multigraph.hpp"
#include "lsrank/spectral.hpp"

using namespace lsrank;

TEST_CASE("er_sample: determinism, edge probability, extremes") {
  auto a = er_sample(12, 0.5, 99);
  auto b = er_sample(12, 0.5, 99);
  CHECK(a.edges() == b.edges());

  CHECK(er_sample(10, 0.0, 1).edges().empty());
  CHECK(static_cast<std::int64_t>(er_sample(10, 1.0, 1).edges().size()) ==
        pair_count(10));

  // Empirical edge frequency close to p over many samples.
  int n = 10, trials = 300;
  std::int64_t total = 0;
  for (int t = 0; t < trials; ++t)
    total += static_cast<std::int64_t>(er_sample(n, 0.3, 1000 + t).edges().size());
  double freq = static_cast<double>(total) / (trials * pair_count(n));
  CHECK(freq == doctest::Approx(0.3).epsilon(0.1));

  CHECK_THROWS_AS(er_sample(10, 1.5, 0), std::invalid_argument);
}

TEST_CASE("er_ensemble aggregates per-sample statistics") {
  auto ens = er_ensemble(16, 0.5, 20, 7);
  REQUIRE(ens.samples.size() == 20);
  double msum = 0.0, lsum = 0.0;
  for (auto [m, lam2] : ens.samples) {
    msum += static_cast<double>(m);
    lsum += lam2;
    CHECK(lam2 >= 0.0);
  }
  CHECK(ens.mean_m == doctest::Approx(msum / 20));
  CHECK(ens.mean_lambda2 == doctest::Approx(lsum / 20));
}

TEST_CASE("bridged_cliques geometry") {
  auto g = bridged_cliques(5, 2);
  CHECK(g.n() == 10);
  // Intra-clique edges complete; bridges 0-5 and 1-6 present.
  CHECK(g.weight(0, 4) == 1);
  CHECK(g.weight(5, 9) == 1);
  CHECK(g.weight(0, 5) == 1);
  CHECK(g.weight(1, 6) == 1);
  CHECK(g.weight(2, 7) == 0);
  CHECK(g.weight(0, 6) == 0);
  CHECK(g.degree_stats().edge_count == 2 * 10 + 2);
  CHECK(g.is_connected());
  // Weak coupling: lambda2 well below the within-clique connectivity.
  CHECK(fiedler(g).value < 2.0);

  CHECK_THROWS_AS(bridged_cliques(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(bridged_cliques(4, 5), std::invalid_argument);
}

TEST_CASE("synth_scores: deterministic, unbiased, variance scales as 1/w") {
  auto g = MultiGraph(2, {{edge_index(0, 1, 2), 4}});
  SyntheticModel model;
  model.phi_true = {-1.0, 1.0};
  model.sigma2 = 8.0;

  // Determinism.
  model.seed = 5;
  auto d1 = synth_scores(g, model);
  auto d2 = synth_scores(g, model);
  CHECK(d1.y.at(0) == d2.y.at(0));

  // Mean ~ phi_j - phi_i = 2, variance ~ sigma2 / w = 2.
  int trials = 20000;
  double sum = 0.0, sumsq = 0.0;
  for (int t = 0; t < trials; ++t) {
    model.seed = 10000 + t;
    double y = synth_scores(g, model).y.at(0);
    sum += y;
    sumsq += y * y;
  }
  double mean = sum / trials;
  double var = sumsq / trials - mean * mean;
  CHECK(mean == doctest::Approx(2.0).epsilon(0.05));
  CHECK(var == doctest::Approx(2.0).epsilon(0.1));

  SyntheticModel bad;
  bad.phi_true = {0.0};
  CHECK_THROWS_AS(synth_scores(g, bad), std::invalid_argument);
}

TEST_CASE("increment_observation updates the running mean") {
  auto g = MultiGraph(3, {{edge_index(0, 1, 3), 2}, {edge_index(1, 2, 3), 1}});
  SyntheticModel model;
  model.phi_true = {0.0, 0.0, 0.0};
  model.sigma2 = 0.0;  // noiseless: every draw equals phi_j - phi_i = 0
  model.seed = 3;
  PairwiseData data{g, {{edge_index(0, 1, 3).k, 6.0},
                        {edge_index(1, 2, 3).k, 0.0}}};
  EdgeKey e = edge_index(0, 1, 3);
  auto next = increment_observation(data, e, model);
  CHECK(next.graph.weight(e) == 3);
  // Running mean of (6, 6, 0): the stored 6.0 stands for two draws of 6.
  CHECK(next.y.at(e.k) == doctest::Approx(4.0));
  // A fresh pair starts from zero history.
  EdgeKey f = edge_index(0, 2, 3);
  auto with_new = increment_observation(data, f, model);
  CHECK(with_new.graph.weight(f) == 1);
  CHECK(with_new.y.at(f.k) == doctest::Approx(0.0));
  // Original untouched.
  CHECK(data.graph.weight(e) == 2);
}

TEST_CASE("active_vs_random report shape and determinism") {
  auto g = bridged_cliques(4, 1);
  SyntheticModel model;
  model.phi_true.resize(8);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> gauss;
  for (auto& x : model.phi_true) x = gauss(rng);
  model.sigma2 = 1.0;
  model.seed = 77;

  auto rep = active_vs_random(g, model, 6, 4, {0, 3, 6});
  CHECK(rep.rows.size() == 2 * 4 * 3);  // strategies x trials x checkpoints
  CHECK(rep.aggregates.size() == 2 * 3);
  for (const auto& row : rep.rows) {
    CHECK((row.strategy == "greedy" || row.strategy == "random"));
    CHECK(row.l2 >= 0.0);
    CHECK(row.ktau >= 0.0);
    CHECK(row.ktau <= 1.0);
    CHECK(row.lambda2 > 0.0);
  }
  // With xi = 0 both strategies share the same base data.
  for (int t = 0; t < 4; ++t) {
    const ExperimentReport::Row *g0 = nullptr, *r0 = nullptr;
    for (const auto& row : rep.rows)
      if (row.trial == t && row.xi == 0)
        (row.strategy == "greedy" ? g0 : r0) = &row;
    REQUIRE(g0 != nullptr);
    REQUIRE(r0 != nullptr);
    CHECK(g0->l2 == doctest::Approx(r0->l2));
    CHECK(g0->ktau == doctest::Approx(r0->ktau));
  }

  auto rep2 = active_vs_random(g, model, 6, 4, {0, 3, 6});
  REQUIRE(rep2.rows.size() == rep.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    CHECK(rep.rows[i].l2 == rep2.rows[i].l2);
    CHECK(rep.rows[i].lambda2 == rep2.rows[i].lambda2);
  }
}

TEST_CASE("empirical estimator covariance matches the closed form") {
  auto g = bridged_cliques(3, 1);  // n = 6
  double err = covariance_check(g, 2.0, 20000, 11);
  CHECK(err < 0.05);
  CHECK_THROWS_AS(covariance_check(bridged_cliques(6, 1), 1.0, 10, 0),
                  std::invalid_argument);
}
