#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "lsrank/multigraph.hpp"

namespace lsrank {

// A multigraph together with the cardinal comparison y_k on each
// positive-weight edge.  y_k is the running mean over the w_k individual
// comparisons and estimates phi_j - phi_i for the canonical i < j pair.
struct PairwiseData {
  MultiGraph graph;
  std::map<std::int64_t, double> y;  // keyed by edge index, support == support(w)

  // Throws std::invalid_argument if support(y) != support(w).
  void validate() const;
};

// Mean-zero least-squares score vector with residual diagnostics.
struct RankingEstimate {
  std::vector<double> phi;        // <phi, 1> = 0
  double relative_residual = 0.0; // ||B phi - y||_w / ||y||_w
  int solver_iterations = 0;
};

// Minimizes ||B phi - y||_{2,w} over mean-zero phi via preconditioned
// conjugate gradient on the normal equations L phi = B^t W y.  Requires a
// connected graph; throws NotConnectedError otherwise.
RankingEstimate lsq_rank(const PairwiseData& data, double tol = 1e-10);

struct Histogram {
  std::vector<std::int64_t> counts;
  std::vector<double> bin_edges;  // counts.size() + 1 edges
  double weighted_residual_norm = 0.0;
  std::vector<double> residuals;  // r_k per support edge, in k order
};

// Histogram of r_k = y_k - (B phi)_k over the support edges.
Histogram residual_histogram(const PairwiseData& data,
                             const RankingEstimate& est, int bins);

// Fraction of strictly oppositely-ordered pairs; ties count as agreement.
double kendall_tau(std::span<const double> phi1, std::span<const double> phi2);

// Euclidean distance after mean-centering both inputs.
double l2_error(std::span<const double> phi_hat, std::span<const double> phi_true);

}  // namespace lsrank
