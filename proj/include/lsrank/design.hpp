#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "lsrank/multigraph.hpp"
#include "lsrank/spectral.hpp"

namespace lsrank {

// Scalarizations of the Fisher information evaluated on the Laplacian
// spectrum: j_e = lambda_2, j_a = harmonic-mean form, j_d = log-det mean
// form, plus the trace-style counters t = M and trace = 2M.
struct CriteriaReport {
  double j_e = 0.0;
  double j_a = 0.0;
  double j_d = 0.0;
  double t = 0.0;
  double trace = 0.0;
  bool defined = true;  // false when disconnected: j_a / j_d are meaningless
};

CriteriaReport criteria(const MultiGraph& g);

enum class Strategy { kGreedy, kRandom };

struct DesignResult {
  explicit DesignResult(MultiGraph g) : augmented(std::move(g)) {}

  std::vector<std::pair<EdgeKey, std::int64_t>> added;  // in addition order, merged runs
  std::vector<double> lambda2_trajectory;               // length xi + 1
  CriteriaReport criteria_before;
  CriteriaReport criteria_after;
  Strategy strategy = Strategy::kGreedy;
  MultiGraph augmented;
};

// Greedy Fiedler heuristic: xi times, add a unit increment to the admissible
// pair (i, j) maximizing (F_i - F_j)^2 where F is the current Fiedler
// vector.  Ties break to the lowest edge index.  The eigensolve is
// warm-started from the previous Fiedler vector unless lambda_2 is detected
// to be (near-)multiple.
DesignResult greedy_augment(const MultiGraph& g, std::int64_t xi,
                            const std::unordered_set<std::int64_t>& forbidden = {},
                            bool warm_start = true, double tol = 1e-8);

// xi unit increments on pairs drawn uniformly with replacement from the
// admissible set; deterministic for a fixed seed.
DesignResult random_augment(const MultiGraph& g, std::int64_t xi,
                            const std::unordered_set<std::int64_t>& forbidden,
                            std::uint64_t seed, double tol = 1e-8);

}  // namespace lsrank
