#pragma once

#include "toric/toric/divisor.hpp"

#include <complex>
#include <map>
#include <memory>

namespace toric {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Monomial basis x^{F^T m + a} of S_alpha, ordered lexicographically in m.
struct GradedBasis {
  DivisorClass degree;
  std::vector<IntVector> monomials;
  std::vector<IntVector> lattice_points;
  std::map<IntVector, std::size_t> index;

  std::size_t size() const { return monomials.size(); }
  bool empty() const { return monomials.empty(); }

  std::optional<std::size_t> find(const IntVector& exponent) const {
    auto it = index.find(exponent);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

using BasisPtr = std::shared_ptr<const GradedBasis>;

inline GradedBasis graded_basis(const Fan& fan, const DivisorClass& alpha) {
  GradedBasis B;
  B.degree = alpha;
  B.lattice_points = lattice_points(divisor_polytope(fan, alpha));
  for (std::size_t i = 0; i < B.lattice_points.size(); ++i) {
    IntVector e = add(fan.pair_rays(B.lattice_points[i]), alpha.rep);
    B.index.emplace(e, i);
    B.monomials.push_back(std::move(e));
  }
  return B;
}

inline BasisPtr make_basis(const Fan& fan, const DivisorClass& alpha) {
  return std::make_shared<const GradedBasis>(graded_basis(fan, alpha));
}

/// Dense coefficient vector over the graded basis of its degree.
struct CoxPolynomial {
  BasisPtr basis;
  ComplexVector coeffs;

  const DivisorClass& degree() const { return basis->degree; }

  /// Nonzero terms as (exponent, coefficient).
  std::vector<std::pair<IntVector, Complex>> terms() const {
    std::vector<std::pair<IntVector, Complex>> t;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != Complex(0)) t.emplace_back(basis->monomials[i], coeffs[i]);
    return t;
  }
};

inline Complex ipow(Complex x, Int e) {
  if (e < 0) return Complex(1) / ipow(x, -e);
  Complex r = 1;
  while (e) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

inline Complex monomial_value(const IntVector& e, const ComplexVector& z) {
  Complex v = 1;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) v *= ipow(z[i], e[i]);
  return v;
}

struct Evaluation {
  Complex value;
  double scale;
};

/// Value of f at z together with sum |c| |z^e|.
inline Evaluation evaluate(const CoxPolynomial& f, const ComplexVector& z) {
  if (z.size() != f.basis->degree.rep.size()) throw std::invalid_argument("evaluate: point of wrong length");
  Evaluation ev{0, 0};
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (f.coeffs[i] == Complex(0)) continue;
    Complex t = f.coeffs[i] * monomial_value(f.basis->monomials[i], z);
    ev.value += t;
    ev.scale += std::abs(t);
  }
  return ev;
}

}  // namespace toric
