#pragma once

#include "toric/toric/divisor.hpp"

#include <numeric>

namespace toric {

/// Recognized product of projective spaces P^{n_1} x ... x P^{n_s}; block j
/// holds the rays of factor j and corresponds to free class coordinate j.
struct ProductStructure {
  std::vector<RaySet> blocks;
  std::vector<std::size_t> dims;
};

inline std::optional<ProductStructure> product_structure(const Fan& fan, const ClassGroup& cl) {
  if (!cl.torsion().empty() || cl.rank() == 0) return std::nullopt;
  const IntMatrix& G = cl.free_map();
  const std::size_t k = fan.num_rays();
  ProductStructure ps;
  std::vector<int> owner(k, -1);
  for (std::size_t r = 0; r < G.rows(); ++r) {
    RaySet b;
    for (std::size_t j = 0; j < k; ++j) {
      if (G(r, j) == 0) continue;
      if (G(r, j) != 1 || owner[j] != -1) return std::nullopt;
      owner[j] = static_cast<int>(r);
      b.push_back(j);
    }
    if (b.size() < 2) return std::nullopt;
    ps.dims.push_back(b.size() - 1);
    ps.blocks.push_back(std::move(b));
  }
  for (auto o : owner)
    if (o < 0) return std::nullopt;
  std::size_t expected = 1;
  for (auto& b : ps.blocks) expected *= b.size();
  if (fan.max_cones.size() != expected) return std::nullopt;
  for (auto& c : fan.max_cones) {
    if (c.size() != fan.n) return std::nullopt;
    std::vector<std::size_t> hits(ps.blocks.size(), 0);
    for (auto i : c) ++hits[static_cast<std::size_t>(owner[i])];
    for (std::size_t j = 0; j < ps.blocks.size(); ++j)
      if (hits[j] + 1 != ps.blocks[j].size()) return std::nullopt;
    RatMatrix M(fan.n, fan.n);
    for (std::size_t r = 0; r < fan.n; ++r)
      for (std::size_t s = 0; s < fan.n; ++s) M(r, s) = fan.rays[c[r]][s];
    Rational det = determinant(M);
    if (det != 1 && det != -1) return std::nullopt;
  }
  return ps;
}

inline Int binomial(Int n, Int k) {
  if (k < 0 || n < k) return 0;
  Int r = 1;
  for (Int i = 1; i <= k; ++i) r = checked_mul(r, n - k + i) / i;
  return r;
}

/// h^i(P^n, O(d)) for i = 0..n.
inline std::vector<Int> projective_space_cohomology(std::size_t n, Int d) {
  std::vector<Int> h(n + 1, 0);
  const Int N = static_cast<Int>(n);
  if (d >= 0) h[0] = binomial(d + N, N);
  if (d <= -N - 1) h[n] = binomial(-d - 1, N);
  return h;
}

using CohomologyDims = std::optional<std::vector<Int>>;

/// Cohomology dimensions h^0..h^n of O(alpha), or nullopt when no formula applies.
inline CohomologyDims cohomology_dims(const Fan& fan, const ClassGroup& cl, const DivisorClass& alpha) {
  const std::size_t n = fan.n;
  auto pos = analyze_divisor(fan, alpha.rep);
  if (pos.nef_q_cartier()) {
    std::vector<Int> h(n + 1, 0);
    h[0] = static_cast<Int>(lattice_points(*pos.polytope).size());
    return h;
  }
  auto neg = analyze_divisor(fan, scale(-1, alpha.rep));
  if (neg.nef_q_cartier()) {
    std::vector<Int> h(n + 1, 0);
    const Polytope& P = *neg.polytope;
    h[static_cast<std::size_t>(P.dim())] = static_cast<Int>(relint_lattice_points(P).size());
    return h;
  }
  if (auto ps = product_structure(fan, cl)) {
    std::vector<Int> h{1};
    for (std::size_t j = 0; j < ps->blocks.size(); ++j) {
      auto f = projective_space_cohomology(ps->dims[j], alpha.deg.free[j]);
      std::vector<Int> next(h.size() + f.size() - 1, 0);
      for (std::size_t a = 0; a < h.size(); ++a)
        for (std::size_t b = 0; b < f.size(); ++b)
          next[a + b] = checked_add(next[a + b], checked_mul(h[a], f[b]));
      h = std::move(next);
    }
    return h;
  }
  return std::nullopt;
}

inline bool higher_cohomology_vanishes(const Fan& fan, const ClassGroup& cl, const DivisorClass& alpha) {
  auto h = cohomology_dims(fan, cl, alpha);
  if (!h) return false;
  for (std::size_t i = 1; i < h->size(); ++i)
    if ((*h)[i] != 0) return false;
  return true;
}

}  // namespace toric
