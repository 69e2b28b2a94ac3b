#pragma once

#include "toric/cox/graded_basis.hpp"

namespace toric {

struct BinomialSolution {
  ComplexVector z;
  /// max |prod w^{U_j} - 1| over the rows that carry no unknowns
  double inconsistency = 0;
  std::size_t rank = 0;
  bool unique = true;
};

/// Solves z^{A_r} = w_r (r = 0..p-1) for z in (C^*)^m through the Smith form
/// U A V = D. Unconstrained directions are set to 1; d-th roots are principal.
inline BinomialSolution solve_binomial(const IntMatrix& A, const ComplexVector& w) {
  const std::size_t p = A.rows(), m = A.cols();
  if (w.size() != p) throw std::invalid_argument("solve_binomial: right-hand side length");
  auto snf = smith_normal_form(A);
  BinomialSolution out;
  out.rank = snf.rank();
  std::vector<Complex> logw(p);
  for (std::size_t l = 0; l < p; ++l) {
    if (w[l] == Complex(0)) throw std::domain_error("solve_binomial: zero right-hand side");
    logw[l] = std::log(w[l]);
  }
  std::vector<Complex> logy(m, Complex(0));
  for (std::size_t j = 0; j < p; ++j) {
    Complex s = 0;
    for (std::size_t l = 0; l < p; ++l)
      if (snf.U(j, l) != 0) s += static_cast<double>(snf.U(j, l)) * logw[l];
    if (j < out.rank) {
      double d = static_cast<double>(snf.D(j, j));
      if (snf.D(j, j) != 1) out.unique = false;
      logy[j] = s / d;
    } else {
      out.inconsistency = std::max(out.inconsistency, std::abs(std::exp(s) - Complex(1)));
    }
  }
  if (out.rank < m) out.unique = false;
  out.z.assign(m, Complex(0));
  for (std::size_t i = 0; i < m; ++i) {
    Complex s = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (snf.V(i, j) != 0) s += static_cast<double>(snf.V(i, j)) * logy[j];
    out.z[i] = std::exp(s);
  }
  return out;
}

}  // namespace toric
