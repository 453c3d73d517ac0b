#pragma once

#include <cstdint>
#include <vector>

#include "lsrank/multigraph.hpp"

namespace lsrank {

// One (eigenvalue, eigenvector) pair of the w-weighted Laplacian.
struct SpectralPair {
  double value = 0.0;
  std::vector<double> vector;  // unit norm
  double residual_norm = 0.0;  // ||L v - value * v||_2
};

struct EigOptions {
  double tol = 1e-8;          // eigen-residual tolerance
  int iter_cap_factor = 50;   // iteration cap = factor * n
  // Optional warm start for the Fiedler direction (previous iterate).
  const std::vector<double>* warm_start = nullptr;
};

// The `count` smallest eigenpairs of the Laplacian, values ascending,
// vectors pairwise orthogonal.  The first pair is always the kernel
// (0, 1/sqrt(n) * ones).  Small graphs use a dense solve; larger ones a
// blocked iterative solver (LOBPCG with constant-vector deflation and
// Jacobi preconditioning).
std::vector<SpectralPair> smallest_eigs(const MultiGraph& g, int count,
                                        const EigOptions& opts = {});

// (lambda_2, Fiedler vector): minimizer of the Rayleigh quotient over unit
// vectors orthogonal to the constant vector.  lambda_2 = 0 with a valid
// certificate vector when the graph is disconnected.
SpectralPair fiedler(const MultiGraph& g, const EigOptions& opts = {});

// All n eigenvalues, ascending, via dense symmetric eigendecomposition.
// Throws std::invalid_argument when n exceeds dense_cap.
std::vector<double> full_spectrum(const MultiGraph& g, int dense_cap = 2000);

struct ClusterResult {
  std::vector<int> assignments;               // vertex -> cluster id
  double within_cluster_sum = 0.0;            // mean over clusters of sumd
  std::vector<std::vector<double>> embedding; // n rows of k coordinates
  double lambda2 = 0.0;
  bool disconnected = false;  // lambda2 ~ 0 warning; clustering proceeded
};

// Normalized spectral clustering: embed via the first k eigenvectors of
// D^{-1/2} L D^{-1/2} with unit-length row renormalization, then seeded
// k-means++.  Throws std::invalid_argument on isolated vertices.
ClusterResult spectral_cluster(const MultiGraph& g, int k, std::uint64_t seed);

}  // namespace lsrank
