#pragma once

#include "toric/cox/homogenize.hpp"

namespace toric {

/// Minimal generators of sigma^dual intersected with M, sorted lexicographically.
inline std::vector<IntVector> dual_hilbert_basis(const Fan& fan, std::size_t cone) {
  const RaySet& c = fan.max_cones.at(cone);
  std::vector<IntVector> gens;
  IntVector s(fan.n, 0);
  for (auto i : c) {
    gens.push_back(fan.rays[i]);
    s = add(s, fan.rays[i]);
  }
  // extreme rays of the dual cone bound the zonotope containing the basis
  auto dual_rays = detail::cone_extreme_rays(gens, fan.n);
  Int bound = 0;
  for (auto& r : dual_rays) bound = checked_add(bound, dot(s, r));
  std::vector<Halfspace> hs;
  for (auto& g : gens) hs.push_back({g, Rational(0)});
  hs.push_back({scale(-1, s), Rational(bound)});
  auto pts = lattice_points(Polytope::from_hrep(hs, fan.n));
  std::stable_sort(pts.begin(), pts.end(),
                   [&](const IntVector& a, const IntVector& b) { return dot(s, a) < dot(s, b); });
  auto in_dual = [&](const IntVector& m) {
    for (auto& g : gens)
      if (dot(g, m) < 0) return false;
    return true;
  };
  std::vector<IntVector> basis;
  for (auto& m : pts) {
    if (dot(s, m) == 0) continue;
    bool reducible = false;
    for (auto& h : basis) {
      IntVector d = sub(m, h);
      if (in_dual(d)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.push_back(m);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

/// Laurent polynomial on the chart U_sigma. `terms` carry exponents in M
/// (shifted by -m_sigma); `monomials` express each term in the generators.
struct Dehomogenized {
  bool zero_map = false;
  RatVector m_sigma;
  std::vector<IntVector> generators;
  std::vector<std::pair<IntVector, Complex>> terms;
  std::vector<std::pair<IntVector, Complex>> monomials;
};

namespace detail {

// Exponent vector over `gens` writing m with minimal total degree, lexicographically
// smallest among those.
inline std::optional<IntVector> express_in_generators(const IntVector& m, const std::vector<IntVector>& gens,
                                                      const IntVector& grading) {
  const Int target = dot(grading, m);
  std::optional<IntVector> best;
  Int best_deg = 0;
  IntVector cur(gens.size(), 0);
  std::function<void(std::size_t, IntVector, Int)> rec = [&](std::size_t i, IntVector rest, Int deg) {
    if (i == gens.size()) {
      for (auto x : rest)
        if (x) return;
      if (!best || deg < best_deg || (deg == best_deg && cur < *best)) {
        best = cur;
        best_deg = deg;
      }
      return;
    }
    Int gd = dot(grading, gens[i]);
    Int remaining = dot(grading, rest);
    for (Int k = remaining / gd; k >= 0; --k) {
      cur[i] = k;
      rec(i + 1, sub(rest, scale(k, gens[i])), deg + k);
    }
    cur[i] = 0;
  };
  if (target < 0) return std::nullopt;
  rec(0, m, 0);
  return best;
}

}  // namespace detail

inline Dehomogenized dehomogenize(const Fan& fan, const CoxPolynomial& f, std::size_t cone) {
  Dehomogenized out;
  const RaySet& c = fan.max_cones.at(cone);
  const IntVector& a = f.degree().rep;
  RatMatrix A(c.size(), fan.n);
  RatVector b(c.size());
  for (std::size_t r = 0; r < c.size(); ++r) {
    for (std::size_t j = 0; j < fan.n; ++j) A(r, j) = fan.rays[c[r]][j];
    b[r] = -a[c[r]];
  }
  auto ms = solve_rational(A, b);
  if (!ms || !is_integral(*ms)) {
    out.zero_map = true;
    return out;
  }
  out.m_sigma = *ms;
  IntVector msig = to_int_vector(*ms);
  out.generators = dual_hilbert_basis(fan, cone);
  IntVector grading(fan.n, 0);
  for (auto i : c) grading = add(grading, fan.rays[i]);
  const auto& B = *f.basis;
  for (std::size_t i = 0; i < B.size(); ++i) {
    if (f.coeffs[i] == Complex(0)) continue;
    IntVector m = sub(B.lattice_points[i], msig);
    out.terms.emplace_back(m, f.coeffs[i]);
    auto y = detail::express_in_generators(m, out.generators, grading);
    if (!y) throw std::logic_error("dehomogenize: term outside the dual cone");
    out.monomials.emplace_back(*y, f.coeffs[i]);
  }
  return out;
}

}  // namespace toric
