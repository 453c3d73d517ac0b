#include "lsrank/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "lsrank/errors.hpp"

namespace lsrank {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr int kDenseFallback = 64;

MatrixXd dense_laplacian(const MultiGraph& g) {
  int n = g.n();
  MatrixXd a = MatrixXd::Zero(n, n);
  for (const auto& [k, w] : g.edges()) {
    EdgeKey e = edge_from_index(k, n);
    double wd = static_cast<double>(w);
    a(e.i, e.i) += wd;
    a(e.j, e.j) += wd;
    a(e.i, e.j) -= wd;
    a(e.j, e.i) -= wd;
  }
  return a;
}

using ApplyFn = std::function<void(const VectorXd&, VectorXd&)>;

double residual_of(const ApplyFn& apply, const VectorXd& v, double lambda) {
  VectorXd av(v.size());
  apply(v, av);
  return (av - lambda * v).norm();
}

// Blocked LOBPCG for the `need` smallest eigenpairs of a symmetric PSD
// operator restricted to the orthogonal complement of `deflate` (unit norm).
std::vector<SpectralPair> lobpcg(const ApplyFn& apply, int n, int need,
                                 const VectorXd& deflate,
                                 const VectorXd& precond_diag,
                                 const EigOptions& opts) {
  int block = std::min(n - 1, need + std::max(2, need / 2));
  std::mt19937_64 rng(0x5ca1ab1eULL);
  std::normal_distribution<double> gauss;

  auto project = [&](MatrixXd& m) {
    for (int c = 0; c < m.cols(); ++c)
      m.col(c) -= deflate * deflate.dot(m.col(c));
  };

  MatrixXd x(n, block);
  for (int c = 0; c < block; ++c)
    for (int r = 0; r < n; ++r) x(r, c) = gauss(rng);
  if (opts.warm_start && static_cast<int>(opts.warm_start->size()) == n) {
    for (int r = 0; r < n; ++r)
      x(r, 0) = (*opts.warm_start)[r];
  }
  project(x);
  x = Eigen::HouseholderQR<MatrixXd>(x).householderQ() * MatrixXd::Identity(n, block);

  auto apply_block = [&](const MatrixXd& m) {
    MatrixXd out(n, m.cols());
    VectorXd tmp(n);
    for (int c = 0; c < m.cols(); ++c) {
      apply(m.col(c), tmp);
      out.col(c) = tmp;
    }
    return out;
  };

  MatrixXd p;  // previous search directions
  VectorXd theta = VectorXd::Zero(block);
  int cap = opts.iter_cap_factor * n;
  double best_resid = std::numeric_limits<double>::infinity();
  VectorXd best_vec = x.col(0);
  double best_val = 0.0;

  for (int iter = 0; iter < cap; ++iter) {
    MatrixXd ax = apply_block(x);
    for (int c = 0; c < block; ++c) theta(c) = x.col(c).dot(ax.col(c));
    MatrixXd r = ax - x * theta.asDiagonal();
    bool done = true;
    for (int c = 0; c < need; ++c)
      if (r.col(c).norm() > opts.tol) done = false;
    if (r.col(0).norm() < best_resid) {
      best_resid = r.col(0).norm();
      best_vec = x.col(0);
      best_val = theta(0);
    }
    if (done) {
      std::vector<SpectralPair> out;
      for (int c = 0; c < need; ++c) {
        SpectralPair sp;
        sp.value = theta(c);
        sp.vector.assign(x.col(c).data(), x.col(c).data() + n);
        sp.residual_norm = r.col(c).norm();
        out.push_back(std::move(sp));
      }
      return out;
    }

    // Preconditioned residuals.
    MatrixXd w = r;
    for (int c = 0; c < block; ++c)
      w.col(c) = w.col(c).cwiseQuotient(precond_diag);
    project(w);

    MatrixXd s(n, block * 2 + p.cols());
    s << x, w, p;
    Eigen::ColPivHouseholderQR<MatrixXd> qr(s);
    qr.setThreshold(1e-12);
    int rank = static_cast<int>(qr.rank());
    rank = std::max(rank, block);
    MatrixXd q = qr.householderQ() * MatrixXd::Identity(n, rank);

    MatrixXd aq = apply_block(q);
    MatrixXd t = q.transpose() * aq;
    t = 0.5 * (t + t.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(t);
    MatrixXd c = es.eigenvectors().leftCols(block);
    MatrixXd x_new = q * c;
    p = x_new - x * (x.transpose() * x_new);
    project(x_new);
    // Re-orthonormalize the block to counter projection drift.
    x = Eigen::HouseholderQR<MatrixXd>(x_new).householderQ() *
        MatrixXd::Identity(n, block);
  }
  throw SolverError("eigensolver failed to converge within iteration cap",
                    std::vector<double>(best_vec.data(), best_vec.data() + n),
                    best_resid);
}

std::vector<SpectralPair> nonconstant_pairs_dense(const MultiGraph& g, int need) {
  int n = g.n();
  MatrixXd a = dense_laplacian(g);
  double shift = 2.0 * (a.diagonal().maxCoeff() + 1.0);
  MatrixXd shifted =
      a + (shift / n) * MatrixXd::Ones(n, n);  // push constant vector up
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(shifted);
  std::vector<SpectralPair> out;
  for (int c = 0; c < need; ++c) {
    SpectralPair sp;
    VectorXd v = es.eigenvectors().col(c);
    VectorXd av = a * v;
    double lambda = std::max(0.0, es.eigenvalues()(c));
    sp.value = lambda;
    sp.vector.assign(v.data(), v.data() + n);
    sp.residual_norm = (av - lambda * v).norm();
    out.push_back(std::move(sp));
  }
  return out;
}

}  // namespace

std::vector<SpectralPair> smallest_eigs(const MultiGraph& g, int count,
                                        const EigOptions& opts) {
  int n = g.n();
  if (count < 1 || count > n)
    throw std::invalid_argument("smallest_eigs: count must be in [1, n]");

  std::vector<SpectralPair> out;
  SpectralPair kernel;
  kernel.value = 0.0;
  kernel.vector.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
  kernel.residual_norm = 0.0;
  out.push_back(std::move(kernel));
  if (count == 1) return out;

  int need = count - 1;
  std::vector<SpectralPair> rest;
  if (n <= kDenseFallback) {
    rest = nonconstant_pairs_dense(g, need);
  } else {
    ApplyFn apply = [&g, n](const VectorXd& v, VectorXd& av) {
      g.laplacian_apply(std::span<const double>(v.data(), n),
                        std::span<double>(av.data(), n));
    };
    VectorXd deflate = VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
    auto ds = g.degree_stats();
    VectorXd diag(n);
    for (int i = 0; i < n; ++i)
      diag(i) = ds.degree[i] > 0 ? static_cast<double>(ds.degree[i]) : 1.0;
    rest = lobpcg(apply, n, need, deflate, diag, opts);
  }
  for (auto& sp : rest) {
    if (sp.value < 0.0 && sp.value > -1e-10) sp.value = 0.0;
    out.push_back(std::move(sp));
  }
  return out;
}

SpectralPair fiedler(const MultiGraph& g, const EigOptions& opts) {
  return smallest_eigs(g, 2, opts)[1];
}

std::vector<double> full_spectrum(const MultiGraph& g, int dense_cap) {
  int n = g.n();
  if (n > dense_cap)
    throw std::invalid_argument(
        "full_spectrum: n exceeds dense cap; use smallest_eigs");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(dense_laplacian(g),
                                             Eigen::EigenvaluesOnly);
  std::vector<double> vals(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(vals.begin(), vals.end());
  return vals;
}

namespace {

struct KMeansResult {
  std::vector<int> assign;
  double mean_sumd = 0.0;
};

KMeansResult kmeans(const MatrixXd& pts, int k, std::uint64_t seed) {
  int n = static_cast<int>(pts.rows());
  std::mt19937_64 rng(seed);
  // k-means++ seeding.
  MatrixXd centroids(k, pts.cols());
  std::uniform_int_distribution<int> uni(0, n - 1);
  centroids.row(0) = pts.row(uni(rng));
  VectorXd d2 = (pts.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    double total = d2.sum();
    int pick = 0;
    if (total > 0) {
      std::uniform_real_distribution<double> ur(0.0, total);
      double target = ur(rng), run = 0.0;
      for (int i = 0; i < n; ++i) {
        run += d2(i);
        if (run >= target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = uni(rng);
    }
    centroids.row(c) = pts.row(pick);
    d2 = d2.cwiseMin(
        (pts.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }

  std::vector<int> assign(n, 0);
  for (int iter = 0; iter < 300; ++iter) {
    for (int i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        double d = (pts.row(i) - centroids.row(c)).squaredNorm();
        if (d < best) {
          best = d;
          assign[i] = c;
        }
      }
    }
    MatrixXd next = MatrixXd::Zero(k, pts.cols());
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
      next.row(assign[i]) += pts.row(i);
      ++counts[assign[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // Re-seed an empty cluster at the point farthest from its centroid.
        int far = 0;
        double fd = -1;
        for (int i = 0; i < n; ++i) {
          double d = (pts.row(i) - centroids.row(assign[i])).squaredNorm();
          if (d > fd) {
            fd = d;
            far = i;
          }
        }
        next.row(c) = pts.row(far);
        counts[c] = 1;
        assign[far] = c;
      } else {
        next.row(c) /= counts[c];
      }
    }
    double shift = (next - centroids).norm();
    double scale = std::max(centroids.norm(), 1e-30);
    centroids = next;
    if (shift / scale < 1e-6) break;
  }
  double sumd = 0.0;
  for (int i = 0; i < n; ++i)
    sumd += (pts.row(i) - centroids.row(assign[i])).squaredNorm();
  KMeansResult res;
  res.assign = std::move(assign);
  res.mean_sumd = sumd / k;
  return res;
}

}  // namespace

ClusterResult spectral_cluster(const MultiGraph& g, int k, std::uint64_t seed) {
  int n = g.n();
  if (k < 1 || k > n) throw std::invalid_argument("spectral_cluster: bad k");
  auto ds = g.degree_stats();
  for (int i = 0; i < n; ++i)
    if (ds.degree[i] == 0)
      throw std::invalid_argument("spectral_cluster: isolated vertex " +
                                  std::to_string(i));

  // Symmetric-normalized Laplacian D^{-1/2} L D^{-1/2}.
  MatrixXd l = dense_laplacian(g);
  VectorXd dinv_sqrt(n);
  for (int i = 0; i < n; ++i)
    dinv_sqrt(i) = 1.0 / std::sqrt(static_cast<double>(ds.degree[i]));
  MatrixXd lsym = dinv_sqrt.asDiagonal() * l * dinv_sqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(lsym);
  MatrixXd emb = es.eigenvectors().leftCols(k);
  for (int i = 0; i < n; ++i) {
    double norm = emb.row(i).norm();
    if (norm > 0) emb.row(i) /= norm;
  }

  auto km = kmeans(emb, k, seed);
  ClusterResult res;
  res.assignments = std::move(km.assign);
  res.within_cluster_sum = km.mean_sumd;
  res.embedding.resize(n);
  for (int i = 0; i < n; ++i)
    res.embedding[i].assign(emb.row(i).begin(), emb.row(i).end());
  res.lambda2 = fiedler(g).value;
  res.disconnected = res.lambda2 < 1e-8;
  return res;
}

}  // namespace lsrank
