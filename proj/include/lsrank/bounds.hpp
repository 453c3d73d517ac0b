#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lsrank/multigraph.hpp"

namespace lsrank {

// A closed-form upper bound on lambda_2 with an optional certifying subset.
struct BoundReport {
  std::string name;
  double value = 0.0;
  std::optional<std::vector<int>> certificate;
  bool warning = false;  // e.g. non-unit weights under the connectivity chain
};

struct DegreeBound {
  double tight = 0.0;  // n d_- / (n-1)
  double loose = 0.0;  // 2M / (n-1)
};

DegreeBound degree_bound(const MultiGraph& g);

// Normalized cut value n * cut(U, U^c) / (|U| |U^c|) for a user-supplied
// nontrivial subset U.
BoundReport cut_bound(const MultiGraph& g, const std::vector<int>& subset);

// Minimum normalized cut over all nontrivial subsets; n <= 20.
BoundReport best_cut_bound_exhaustive(const MultiGraph& g);

// Probabilistic bound for G(n, p): np + 4 n^{-2} sqrt(2 log(1/eps)), valid
// with probability >= 1 - eps.  Requires even n.
double er_bound(int n, double p, double eps);

// Edge-connectivity chain value (global min cut).  Stated for unit-weight,
// non-complete graphs; sets warning when weights exceed 1.
BoundReport edge_connectivity_bound(const MultiGraph& g);

}  // namespace lsrank
