#include "lsrank/multigraph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace lsrank {

std::int64_t pair_count(int n) {
  return static_cast<std::int64_t>(n) * (n - 1) / 2;
}

EdgeKey edge_index(int i, int j, int n) {
  if (n < 2) throw std::invalid_argument("edge_index: need n >= 2");
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("edge_index: vertex id out of range: (" +
                                std::to_string(i) + "," + std::to_string(j) +
                                ") with n=" + std::to_string(n));
  if (i == j)
    throw std::invalid_argument("edge_index: self-loop at vertex " +
                                std::to_string(i));
  if (i > j) std::swap(i, j);
  // Row-major over rows i: row i holds pairs (i, i+1) .. (i, n-1).
  std::int64_t k = static_cast<std::int64_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
  return EdgeKey{i, j, k};
}

EdgeKey edge_from_index(std::int64_t k, int n) {
  if (k < 0 || k >= pair_count(n))
    throw std::invalid_argument("edge_from_index: index out of range");
  std::int64_t rem = k;
  int i = 0;
  while (rem >= n - 1 - i) {
    rem -= n - 1 - i;
    ++i;
  }
  int j = i + 1 + static_cast<int>(rem);
  return EdgeKey{i, j, k};
}

MultiGraph::MultiGraph(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("MultiGraph: need n >= 2");
}

MultiGraph::MultiGraph(int n,
                       const std::vector<std::pair<EdgeKey, std::int64_t>>& edges)
    : MultiGraph(n) {
  std::map<std::int64_t, std::int64_t> acc;
  for (const auto& [e, w] : edges) {
    if (w <= 0) throw std::invalid_argument("MultiGraph: weights must be positive");
    if (e.k < 0 || e.k >= pair_count())
      throw std::invalid_argument("MultiGraph: edge index out of range");
    acc[e.k] += w;
  }
  edges_.assign(acc.begin(), acc.end());
}

std::int64_t MultiGraph::weight(const EdgeKey& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e.k,
                             [](const auto& p, std::int64_t k) { return p.first < k; });
  if (it != edges_.end() && it->first == e.k) return it->second;
  return 0;
}

std::int64_t MultiGraph::weight(int i, int j) const {
  return weight(edge_index(i, j, n_));
}

MultiGraph MultiGraph::add_weight(const EdgeKey& e, std::int64_t c) const {
  if (c <= 0) throw std::invalid_argument("add_weight: increment must be positive");
  if (e.k < 0 || e.k >= pair_count())
    throw std::invalid_argument("add_weight: edge index out of range");
  MultiGraph out(n_);
  out.edges_ = edges_;
  auto it = std::lower_bound(out.edges_.begin(), out.edges_.end(), e.k,
                             [](const auto& p, std::int64_t k) { return p.first < k; });
  if (it != out.edges_.end() && it->first == e.k)
    it->second += c;
  else
    out.edges_.insert(it, {e.k, c});
  return out;
}

DegreeStats MultiGraph::degree_stats() const {
  DegreeStats s;
  s.degree.assign(n_, 0);
  for (const auto& [k, w] : edges_) {
    EdgeKey e = edge_from_index(k, n_);
    s.degree[e.i] += w;
    s.degree[e.j] += w;
    s.total_weight += w;
    ++s.edge_count;
  }
  s.d_plus = *std::max_element(s.degree.begin(), s.degree.end());
  s.d_minus = *std::min_element(s.degree.begin(), s.degree.end());
  return s;
}

std::vector<std::vector<int>> MultiGraph::components() const {
  std::vector<std::vector<int>> adj(n_);
  for (const auto& [k, w] : edges_) {
    EdgeKey e = edge_from_index(k, n_);
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  std::vector<int> comp(n_, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n_; ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(out.size());
    std::vector<int> members, stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (int v : adj[u])
        if (comp[v] < 0) {
          comp[v] = id;
          stack.push_back(v);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

bool MultiGraph::is_connected() const { return components().size() == 1; }

void MultiGraph::laplacian_apply(std::span<const double> v,
                                 std::span<double> out) const {
  if (static_cast<int>(v.size()) != n_ || static_cast<int>(out.size()) != n_)
    throw std::invalid_argument("laplacian_apply: dimension mismatch");
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& [k, w] : edges_) {
    EdgeKey e = edge_from_index(k, n_);
    double flow = static_cast<double>(w) * (v[e.i] - v[e.j]);
    out[e.i] += flow;
    out[e.j] -= flow;
  }
}

std::vector<double> MultiGraph::laplacian_apply(std::span<const double> v) const {
  std::vector<double> out(n_);
  laplacian_apply(v, out);
  return out;
}

double MultiGraph::quadratic_form(std::span<const double> v) const {
  if (static_cast<int>(v.size()) != n_)
    throw std::invalid_argument("quadratic_form: dimension mismatch");
  double q = 0.0;
  for (const auto& [k, w] : edges_) {
    EdgeKey e = edge_from_index(k, n_);
    double diff = v[e.j] - v[e.i];
    q += static_cast<double>(w) * diff * diff;
  }
  return q;
}

MinCut global_min_cut(const MultiGraph& g) {
  int n = g.n();
  if (n < 2) throw std::invalid_argument("global_min_cut: need n >= 2");
  auto comps = g.components();
  if (comps.size() > 1) return MinCut{0, comps.front()};

  // Stoer-Wagner on a dense weight matrix; vertices are merged supernodes.
  std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, 0));
  for (const auto& [k, wk] : g.edges()) {
    EdgeKey e = edge_from_index(k, n);
    w[e.i][e.j] += wk;
    w[e.j][e.i] += wk;
  }
  std::vector<std::vector<int>> members(n);
  for (int i = 0; i < n; ++i) members[i] = {i};
  std::vector<int> active(n);
  for (int i = 0; i < n; ++i) active[i] = i;

  MinCut best;
  best.value = std::numeric_limits<std::int64_t>::max();
  while (active.size() > 1) {
    // Maximum-adjacency ordering of the active supernodes.
    std::vector<std::int64_t> conn(n, 0);
    std::vector<char> in_a(n, 0);
    std::vector<int> order;
    for (std::size_t step = 0; step < active.size(); ++step) {
      int sel = -1;
      for (int u : active)
        if (!in_a[u] && (sel < 0 || conn[u] > conn[sel])) sel = u;
      in_a[sel] = 1;
      order.push_back(sel);
      for (int u : active)
        if (!in_a[u]) conn[u] += w[sel][u];
    }
    int t = order.back();
    int s = order[order.size() - 2];
    std::int64_t cut_of_phase = conn[t];
    if (cut_of_phase < best.value) {
      best.value = cut_of_phase;
      best.partition = members[t];
    }
    // Merge t into s.
    for (int u : active) {
      if (u == s || u == t) continue;
      w[s][u] += w[t][u];
      w[u][s] = w[s][u];
    }
    members[s].insert(members[s].end(), members[t].begin(), members[t].end());
    active.erase(std::find(active.begin(), active.end(), t));
  }
  std::sort(best.partition.begin(), best.partition.end());
  return best;
}

}  // namespace lsrank
