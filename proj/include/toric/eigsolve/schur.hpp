#pragma once

#include "toric/eigsolve/multiplication.hpp"

#include <Eigen/Eigenvalues>

#include <numeric>

namespace toric {

struct Cluster {
  std::size_t offset = 0;
  std::size_t size = 0;
  /// lambda_{b,i} = Trace(Delta_i^b) / mu_i, one per monomial of S_alpha0.
  ComplexVector lambda;
};

struct SchurClustering {
  CMatrix U;
  std::vector<Cluster> clusters;
  double cluster_gap = 0;
  double leakage = 0;
  ComplexVector combination;
};

namespace detail {

// Complex Givens rotation [c s; -conj(s) c] with [c s; -conj(s) c] [f; g] = [r; 0].
inline void givens(Complex f, Complex g, double& c, Complex& s) {
  if (g == Complex(0)) {
    c = 1;
    s = 0;
    return;
  }
  if (f == Complex(0)) {
    c = 0;
    s = std::conj(g) / std::abs(g);
    return;
  }
  double af = std::abs(f), ag = std::abs(g);
  double norm = std::hypot(af, ag);
  c = af / norm;
  s = (f / af) * std::conj(g) / norm;
}

// Swaps the adjacent diagonal entries k, k+1 of the upper triangular T and
// updates Q so that Q T Q^H is unchanged.
inline void swap_adjacent(CMatrix& T, CMatrix& Q, Eigen::Index k) {
  const Eigen::Index n = T.rows();
  Complex t11 = T(k, k), t22 = T(k + 1, k + 1);
  double c;
  Complex s;
  givens(T(k, k + 1), t22 - t11, c, s);
  for (Eigen::Index j = k; j < n; ++j) {
    Complex x = T(k, j), y = T(k + 1, j);
    T(k, j) = c * x + s * y;
    T(k + 1, j) = c * y - std::conj(s) * x;
  }
  for (Eigen::Index i = 0; i <= k + 1; ++i) {
    Complex x = T(i, k), y = T(i, k + 1);
    T(i, k) = c * x + std::conj(s) * y;
    T(i, k + 1) = c * y - s * x;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex x = Q(i, k), y = Q(i, k + 1);
    Q(i, k) = c * x + std::conj(s) * y;
    Q(i, k + 1) = c * y - s * x;
  }
  T(k + 1, k) = 0;
}

inline std::vector<std::size_t> cluster_labels(const ComplexVector& ev, double gap) {
  const std::size_t n = ev.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double scale = 1.0 + std::max(std::abs(ev[i]), std::abs(ev[j]));
      if (std::abs(ev[i] - ev[j]) <= gap * scale) parent[find(i)] = find(j);
    }
  // relabel by first occurrence
  std::vector<std::size_t> label(n);
  std::map<std::size_t, std::size_t> ids;
  for (std::size_t i = 0; i < n; ++i) {
    auto root = find(i);
    auto it = ids.find(root);
    if (it == ids.end()) it = ids.emplace(root, ids.size()).first;
    label[i] = it->second;
  }
  return label;
}

}  // namespace detail

/// Reordered Schur form of a random combination of the family; clusters of
/// nearby eigenvalues become contiguous diagonal blocks.
inline SchurClustering schur_cluster(const MultiplicationFamily& fam, Rng& rng, const Tolerances& tol = {},
                                     std::optional<ComplexVector> combination = std::nullopt) {
  SchurClustering out;
  out.cluster_gap = tol.cluster_gap;
  if (fam.matrices.empty()) throw std::invalid_argument("schur_cluster: empty family");
  const Eigen::Index d = fam.matrices[0].rows();
  if (d == 0) return out;

  if (combination) {
    out.combination = *combination;
  } else {
    out.combination.resize(fam.matrices.size());
    for (auto& c : out.combination) c = complex_gaussian(rng);
  }
  CMatrix Mh = CMatrix::Zero(d, d);
  for (std::size_t j = 0; j < fam.matrices.size(); ++j) Mh += out.combination[j] * fam.matrices[j];

  Eigen::ComplexSchur<CMatrix> schur(Mh);
  if (schur.info() != Eigen::Success) throw Error(Stage::Clustering, "Schur factorization did not converge");
  CMatrix T = schur.matrixT();
  CMatrix Q = schur.matrixU();
  ComplexVector ev(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) ev[static_cast<std::size_t>(i)] = T(i, i);
  auto label = detail::cluster_labels(ev, tol.cluster_gap);

  // stable bubble sort of labels by adjacent swaps
  for (std::size_t pass = 0; pass < label.size(); ++pass) {
    bool moved = false;
    for (std::size_t k = 0; k + 1 < label.size(); ++k)
      if (label[k] > label[k + 1]) {
        detail::swap_adjacent(T, Q, static_cast<Eigen::Index>(k));
        std::swap(label[k], label[k + 1]);
        moved = true;
      }
    if (!moved) break;
  }

  std::size_t start = 0;
  while (start < label.size()) {
    std::size_t end = start;
    while (end < label.size() && label[end] == label[start]) ++end;
    out.clusters.push_back({start, end - start, {}});
    start = end;
  }

  out.U = Q;
  // leakage is measured against the largest member so that (numerically) zero
  // members do not dominate
  double ref = std::numeric_limits<double>::min();
  for (auto& M : fam.matrices) ref = std::max(ref, M.norm());
  double leak = 0;
  for (auto& M : fam.matrices) {
    CMatrix D = Q.adjoint() * M * Q;
    double lower = 0;
    for (auto& c : out.clusters) {
      const Eigen::Index below = static_cast<Eigen::Index>(c.offset + c.size);
      if (below < d)
        lower += D.block(below, static_cast<Eigen::Index>(c.offset), d - below, static_cast<Eigen::Index>(c.size))
                     .squaredNorm();
    }
    leak = std::max(leak, std::sqrt(lower) / ref);
    for (auto& c : out.clusters) {
      const Eigen::Index o = static_cast<Eigen::Index>(c.offset), s = static_cast<Eigen::Index>(c.size);
      c.lambda.push_back(D.block(o, o, s, s).trace() / static_cast<double>(c.size));
    }
  }
  out.leakage = leak;
  if (leak > tol.leak_tol) throw Error(Stage::Clustering, "clustering failed; decrease cluster_gap or reseed");
  return out;
}

}  // namespace toric
