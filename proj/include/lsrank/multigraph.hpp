#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace lsrank {

// Canonical unordered pair {i, j} with i < j together with its lexicographic
// index k among the N = n(n-1)/2 pairs.  Arc orientation is fixed as
// tail = i, head = j; the stored comparison y_k estimates phi_j - phi_i.
struct EdgeKey {
  int i;
  int j;
  std::int64_t k;
};

std::int64_t pair_count(int n);

// Maps an unordered vertex pair to its canonical key.  Accepts (i, j) in
// either order; throws std::invalid_argument on self-loops or ids outside
// [0, n).
EdgeKey edge_index(int i, int j, int n);

// Inverse of edge_index: recovers the (i, j) pair from the lexicographic
// index k.
EdgeKey edge_from_index(std::int64_t k, int n);

struct DegreeStats {
  std::vector<std::int64_t> degree;  // d_i = sum_j w_ij
  std::int64_t d_plus = 0;           // max degree
  std::int64_t d_minus = 0;          // min degree
  std::int64_t total_weight = 0;     // M = sum_k w_k
  std::int64_t edge_count = 0;       // m = #{k : w_k > 0}
};

// Weighted multigraph on n labeled vertices.  Weights are strictly positive
// integers stored sparsely by edge index; an absent entry means w_k = 0.
// Immutable after construction; add_weight returns a modified copy.
class MultiGraph {
 public:
  explicit MultiGraph(int n);

  // Builds from explicit (EdgeKey, weight) pairs.  Repeated keys accumulate.
  MultiGraph(int n, const std::vector<std::pair<EdgeKey, std::int64_t>>& edges);

  int n() const { return n_; }
  std::int64_t pair_count() const { return lsrank::pair_count(n_); }

  std::int64_t weight(const EdgeKey& e) const;
  std::int64_t weight(int i, int j) const;

  // Sorted by edge index k; only positive weights appear.
  const std::vector<std::pair<std::int64_t, std::int64_t>>& edges() const {
    return edges_;
  }

  // Returns a copy with w_k increased by c (c >= 1).
  MultiGraph add_weight(const EdgeKey& e, std::int64_t c = 1) const;

  DegreeStats degree_stats() const;

  bool is_connected() const;

  // Connected components over positive-weight edges, each sorted, ordered by
  // smallest member.
  std::vector<std::vector<int>> components() const;

  // Matrix-free action of the w-weighted Laplacian:
  //   (L v)_i = sum_j w_ij (v_i - v_j).
  std::vector<double> laplacian_apply(std::span<const double> v) const;
  void laplacian_apply(std::span<const double> v, std::span<double> out) const;

  // Quadratic form <v, L v> = sum_k w_k (v_j - v_i)^2, by direct summation.
  double quadratic_form(std::span<const double> v) const;

 private:
  int n_;
  std::vector<std::pair<std::int64_t, std::int64_t>> edges_;  // (k, w), sorted
};

struct MinCut {
  std::int64_t value = 0;
  std::vector<int> partition;  // one side of an achieving cut
};

// Global minimum weighted cut via Stoer-Wagner contraction.  Returns 0 with
// one component as the partition when the graph is disconnected.  Requires
// n >= 2.
MinCut global_min_cut(const MultiGraph& g);

}  // namespace lsrank
