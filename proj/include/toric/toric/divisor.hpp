#pragma once

#include "toric/toric/class_group.hpp"

#include <complex>
#include <cmath>

namespace toric {

/// P_a = {m : F^T m + a >= 0}.
inline Polytope divisor_polytope(const Fan& fan, const IntVector& a) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < fan.num_rays(); ++i) hs.push_back({fan.rays[i], Rational(a[i])});
  return Polytope::from_hrep(hs, fan.n);
}

inline Polytope divisor_polytope(const Fan& fan, const DivisorClass& alpha) {
  return divisor_polytope(fan, alpha.rep);
}

/// Class of the Cartier divisor sum_i (-min_{v in P} <u_i, v>) D_i.
inline DivisorClass divisor_of_polytope(const Fan& fan, const ClassGroup& cl, const Polytope& P) {
  if (P.empty()) throw std::invalid_argument("divisor_of_polytope: empty polytope");
  if (!P.is_lattice()) throw std::invalid_argument("divisor_of_polytope: not a lattice polytope");
  IntVector a(fan.num_rays());
  for (std::size_t i = 0; i < fan.num_rays(); ++i) a[i] = -to_int(P.min_dot(fan.rays[i]));
  for (auto& c : fan.max_cones) {
    bool found = false;
    for (auto& v : P.vertices()) {
      bool ok = true;
      for (auto i : c)
        if (dot(fan.rays[i], v) != Rational(-a[i])) {
          ok = false;
          break;
        }
      if (ok) {
        found = true;
        break;
      }
    }
    if (!found) throw FanError("fan does not refine the normal fan of P");
  }
  return cl.divisor(a);
}

/// Support-function data of a divisor: local solutions m_sigma of
/// <u_i, m> = -a_i on each maximal cone.
struct CartierData {
  bool q_cartier = false;
  bool cartier = false;
  bool nef = false;
  std::vector<RatVector> m_sigma;
  std::optional<Polytope> polytope;

  bool nef_q_cartier() const { return q_cartier && nef; }
};

inline CartierData analyze_divisor(const Fan& fan, const IntVector& a) {
  CartierData d;
  d.q_cartier = true;
  d.cartier = true;
  for (auto& c : fan.max_cones) {
    RatMatrix A(c.size(), fan.n);
    RatVector b(c.size());
    for (std::size_t r = 0; r < c.size(); ++r) {
      for (std::size_t j = 0; j < fan.n; ++j) A(r, j) = fan.rays[c[r]][j];
      b[r] = -a[c[r]];
    }
    auto m = solve_rational(A, b);
    if (!m) {
      d.q_cartier = false;
      d.cartier = false;
      d.m_sigma.clear();
      break;
    }
    if (!is_integral(*m)) d.cartier = false;
    d.m_sigma.push_back(*m);
  }
  if (d.q_cartier) {
    d.nef = true;
    for (auto& m : d.m_sigma)
      for (std::size_t j = 0; j < fan.num_rays() && d.nef; ++j)
        if (dot(fan.rays[j], m) + Rational(a[j]) < 0) d.nef = false;
  }
  try {
    d.polytope = divisor_polytope(fan, a);
  } catch (const UnboundedError&) {
  }
  return d;
}

/// Nef Q-Cartier test; the witness is the rational polytope P_alpha.
inline std::pair<bool, std::optional<Polytope>> is_nef_qcartier(const Fan& fan, const DivisorClass& alpha) {
  auto d = analyze_divisor(fan, alpha.rep);
  return {d.nef_q_cartier(), d.polytope};
}

inline bool is_cartier(const Fan& fan, const DivisorClass& alpha) {
  return analyze_divisor(fan, alpha.rep).cartier;
}

inline bool is_effective(const Fan& fan, const DivisorClass& alpha) {
  return !lattice_points(divisor_polytope(fan, alpha)).empty();
}

/// Exponent vectors F^T m + a for the lattice points m of P_a.
inline std::vector<IntVector> section_monomials(const Fan& fan, const IntVector& a) {
  std::vector<IntVector> out;
  for (auto& m : lattice_points(divisor_polytope(fan, a))) out.push_back(add(fan.pair_rays(m), a));
  return out;
}

/// Every maximal cone has a section monomial not divisible by any of its variables.
inline bool is_globally_basepoint_free(const Fan& fan, const DivisorClass& alpha) {
  auto mons = section_monomials(fan, alpha.rep);
  for (auto& c : fan.max_cones) {
    bool ok = false;
    for (auto& e : mons) {
      bool zero_on_cone = true;
      for (auto i : c)
        if (e[i] != 0) {
          zero_on_cone = false;
          break;
        }
      if (zero_on_cone) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

/// No point in `points` is a base point of S_alpha: some monomial of S_alpha
/// is nonzero there (relative to the coordinate scale).
inline bool is_basepoint_free_on(const Fan& fan, const DivisorClass& alpha,
                                 const std::vector<std::vector<std::complex<double>>>& points,
                                 double tol_zero = 1e-10) {
  auto mons = section_monomials(fan, alpha.rep);
  if (mons.empty()) return false;
  for (auto& z : points) {
    double s = 0;
    for (auto& x : z) s = std::max(s, std::abs(x));
    if (s == 0) return false;
    bool ok = false;
    for (auto& e : mons) {
      double v = 1;
      for (std::size_t i = 0; i < e.size(); ++i) v *= std::pow(std::abs(z[i]) / s, static_cast<double>(e[i]));
      if (v > tol_zero) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace toric
