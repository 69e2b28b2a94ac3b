#pragma once

#include "toric/cox/graded_basis.hpp"

namespace toric {

/// Laurent polynomial in t_1..t_n as exponent/coefficient pairs.
struct LaurentPolynomial {
  std::size_t n = 0;
  std::vector<std::pair<IntVector, Complex>> terms;

  /// Exponents with nonzero coefficients, merged and sorted.
  std::vector<std::pair<IntVector, Complex>> normalized() const {
    std::map<IntVector, Complex> acc;
    for (auto& [e, c] : terms) {
      if (e.size() != n) throw std::invalid_argument("Laurent term of wrong length");
      acc[e] += c;
    }
    std::vector<std::pair<IntVector, Complex>> out;
    for (auto& [e, c] : acc)
      if (c != Complex(0)) out.emplace_back(e, c);
    return out;
  }

  Polytope newton_polytope() const {
    std::vector<IntVector> pts;
    for (auto& t : normalized()) pts.push_back(t.first);
    if (pts.empty()) throw std::invalid_argument("zero Laurent polynomial has no Newton polytope");
    return Polytope::from_points(pts, n);
  }

  Complex evaluate(const ComplexVector& t) const {
    Complex v = 0;
    for (auto& [e, c] : terms) v += c * monomial_value(e, t);
    return v;
  }
};

/// Homogeneous system f_1..f_s in the Cox ring of a toric variety.
struct HomogeneousSystem {
  Fan fan;
  ClassGroup cl;
  std::vector<CoxPolynomial> polys;
  std::vector<DivisorClass> degrees;
  std::vector<LaurentPolynomial> laurent_source;
  std::vector<Polytope> newton;

  std::size_t size() const { return polys.size(); }
  std::size_t num_vars() const { return fan.num_rays(); }
  bool is_square() const { return polys.size() == fan.n; }
};

/// Fan of the Minkowski sum of the Newton polytopes, optionally with a
/// prescribed ray order or explicit cones.
inline Fan toric_compactification(const std::vector<LaurentPolynomial>& sys,
                                  const std::vector<IntVector>& rays = {},
                                  const std::vector<RaySet>& cones = {}) {
  if (sys.empty()) throw std::invalid_argument("empty system");
  std::vector<Polytope> Ps;
  for (auto& f : sys) Ps.push_back(f.newton_polytope());
  Polytope P = minkowski_sum(Ps);
  if (!P.full_dimensional()) throw FanError("Minkowski sum of Newton polytopes is not full-dimensional");
  if (!cones.empty()) {
    Fan f = make_fan(sys[0].n, rays, cones);
    f.source = P;
    return f;
  }
  if (!rays.empty()) return normal_fan(P, rays);
  return normal_fan(P);
}

/// Coefficient of x^{F^T m + a_i} is the coefficient of t^m in f_i.
inline CoxPolynomial homogenize_one(const Fan& fan, const ClassGroup& cl, const LaurentPolynomial& f) {
  DivisorClass alpha = divisor_of_polytope(fan, cl, f.newton_polytope());
  auto B = make_basis(fan, alpha);
  CoxPolynomial p{B, ComplexVector(B->size(), Complex(0))};
  for (auto& [m, c] : f.normalized()) {
    auto idx = B->find(add(fan.pair_rays(m), alpha.rep));
    if (!idx) throw std::logic_error("homogenize: exponent outside the graded basis");
    p.coeffs[*idx] = c;
  }
  return p;
}

inline HomogeneousSystem homogenize(const Fan& fan, const std::vector<LaurentPolynomial>& sys) {
  HomogeneousSystem H;
  H.fan = fan;
  H.cl = ClassGroup(fan);
  for (auto& f : sys) {
    if (f.n != fan.n) throw std::invalid_argument("homogenize: variable count does not match the fan");
    H.newton.push_back(f.newton_polytope());
    H.polys.push_back(homogenize_one(fan, H.cl, f));
    H.degrees.push_back(H.polys.back().degree());
  }
  H.laurent_source = sys;
  return H;
}

inline HomogeneousSystem homogenize(const std::vector<LaurentPolynomial>& sys) {
  return homogenize(toric_compactification(sys), sys);
}

}  // namespace toric
