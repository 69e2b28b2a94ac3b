#pragma once

#include "toric/eigsolve/res.hpp"

#include <random>

namespace toric {

using Rng = std::mt19937_64;

inline Complex complex_gaussian(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  double re = g(rng);
  double im = g(rng);
  return {re, im};
}

enum class BasisSelector { PivotedQR, SVD };

struct FamilyOptions {
  BasisSelector selector = BasisSelector::PivotedQR;
  /// Use these basis columns of S_alpha instead of a pivoted choice.
  std::optional<std::vector<std::size_t>> fixed_columns;
  /// Use this h0 (coefficients over S_alpha0) instead of a random one.
  std::optional<ComplexVector> fixed_h0;
};

/// M_{x^b/h0} for every monomial x^b of S_alpha0, in basis order.
struct MultiplicationFamily {
  BasisPtr basis_alpha, basis_alpha0;
  std::vector<std::size_t> basis_columns;
  CMatrix W;
  ComplexVector h0;
  std::vector<CMatrix> matrices;
  double condition = 0;
  int attempts = 0;
};

/// delta+ x dim S_alpha matrix of f -> N(x^b f).
inline CMatrix shifted_cokernel(const CokernelMap& cok, const GradedBasis& rows, const GradedBasis& Ba,
                                const IntVector& b) {
  CMatrix Nb(cok.N.rows(), static_cast<Eigen::Index>(Ba.size()));
  for (std::size_t c = 0; c < Ba.size(); ++c) {
    auto r = rows.find(add(Ba.monomials[c], b));
    if (!r) throw std::logic_error("shifted_cokernel: product outside S_{alpha+alpha0}");
    Nb.col(static_cast<Eigen::Index>(c)) = cok.N.col(static_cast<Eigen::Index>(*r));
  }
  return Nb;
}

inline double condition_number(const CMatrix& A) {
  if (A.rows() == 0) return 1.0;
  Eigen::JacobiSVD<CMatrix> svd(A);
  const auto& s = svd.singularValues();
  double lo = s(s.size() - 1);
  return lo > 0 ? s(0) / lo : std::numeric_limits<double>::infinity();
}

inline MultiplicationFamily multiplication_family(const CokernelMap& cok, const GradedBasis& rows,
                                                  const HomogeneousSystem& sys, const DivisorClass& alpha,
                                                  const DivisorClass& alpha0, Rng& rng, const Tolerances& tol = {},
                                                  const FamilyOptions& opt = {}) {
  MultiplicationFamily fam;
  fam.basis_alpha = make_basis(sys.fan, alpha);
  fam.basis_alpha0 = make_basis(sys.fan, alpha0);
  const auto& Ba = *fam.basis_alpha;
  const auto& B0 = *fam.basis_alpha0;
  const Eigen::Index d = static_cast<Eigen::Index>(cok.delta_plus);
  if (B0.empty()) throw Error(Stage::Pair, "S_alpha0 is empty");
  if (static_cast<std::size_t>(d) > Ba.size())
    throw Error(Stage::Pair, "delta+ exceeds dim S_alpha; (alpha, alpha0) is not a regularity pair");

  std::vector<CMatrix> Nb;
  for (auto& b : B0.monomials) Nb.push_back(shifted_cokernel(cok, rows, Ba, b));

  const int max_attempts = opt.fixed_h0 ? 1 : tol.retries_max;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    fam.attempts = attempt;
    if (opt.fixed_h0) {
      fam.h0 = *opt.fixed_h0;
    } else {
      fam.h0.assign(B0.size(), Complex(0));
      for (auto& c : fam.h0) c = complex_gaussian(rng);
    }
    CMatrix Nh0 = CMatrix::Zero(d, static_cast<Eigen::Index>(Ba.size()));
    for (std::size_t j = 0; j < B0.size(); ++j) Nh0 += fam.h0[j] * Nb[j];

    if (opt.fixed_columns) {
      fam.basis_columns = *opt.fixed_columns;
    } else if (opt.selector == BasisSelector::PivotedQR) {
      Eigen::ColPivHouseholderQR<CMatrix> qr(Nh0);
      const auto& perm = qr.colsPermutation().indices();
      fam.basis_columns.clear();
      for (Eigen::Index i = 0; i < d; ++i) fam.basis_columns.push_back(static_cast<std::size_t>(perm(i)));
    }
    if (opt.selector == BasisSelector::SVD && !opt.fixed_columns) {
      Eigen::JacobiSVD<CMatrix> svd(Nh0, Eigen::ComputeFullV);
      fam.W = svd.matrixV().leftCols(d);
      fam.basis_columns.clear();
    } else {
      fam.W = CMatrix::Zero(static_cast<Eigen::Index>(Ba.size()), d);
      for (Eigen::Index i = 0; i < d; ++i) fam.W(static_cast<Eigen::Index>(fam.basis_columns[static_cast<std::size_t>(i)]), i) = 1.0;
    }
    CMatrix A = Nh0 * fam.W;
    fam.condition = condition_number(A);
    if (!(fam.condition <= tol.cond_max)) continue;
    Eigen::PartialPivLU<CMatrix> lu(A);
    fam.matrices.clear();
    for (auto& N : Nb) fam.matrices.push_back(lu.solve(N * fam.W));
    return fam;
  }
  throw Error(Stage::Pair, "alpha0 may have basepoints on V(I): (N_h0)|_W stays ill-conditioned");
}

}  // namespace toric
