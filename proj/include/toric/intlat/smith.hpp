#pragma once

#include "toric/intlat/integer.hpp"

#include <algorithm>
#include <optional>

namespace toric {

/// U * A * V == D with U, V unimodular and d_1 | d_2 | ... on the diagonal.
struct SmithDecomposition {
  BigMatrix U, V, D;

  std::size_t rank() const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
      if (D(i, i) != 0) ++r;
    return r;
  }

  std::vector<BigInt> diagonal() const {
    std::vector<BigInt> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// row_i <- row_i - q * row_j on both A and the row-transform matrix
inline void row_axpy(BigMatrix& A, BigMatrix& U, std::size_t i, std::size_t j, const BigInt& q) {
  if (q == 0) return;
  for (std::size_t c = 0; c < A.cols(); ++c) A(i, c) -= q * A(j, c);
  for (std::size_t c = 0; c < U.cols(); ++c) U(i, c) -= q * U(j, c);
}

inline void col_axpy(BigMatrix& A, BigMatrix& V, std::size_t i, std::size_t j, const BigInt& q) {
  if (q == 0) return;
  for (std::size_t r = 0; r < A.rows(); ++r) A(r, i) -= q * A(r, j);
  for (std::size_t r = 0; r < V.rows(); ++r) V(r, i) -= q * V(r, j);
}

}  // namespace detail

inline SmithDecomposition smith_normal_form(const BigMatrix& A) {
  using detail::col_axpy;
  using detail::row_axpy;
  const std::size_t m = A.rows(), n = A.cols();
  BigMatrix D = A;
  BigMatrix U = BigMatrix::identity(m);
  BigMatrix V = BigMatrix::identity(n);

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::optional<std::pair<std::size_t, std::size_t>> piv;
      BigInt best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (D(i, j) == 0) continue;
          BigInt a = abs(D(i, j));
          if (!piv || a < best) {
            best = a;
            piv = {i, j};
          }
        }
      if (!piv) break;
      D.swap_rows(t, piv->first);
      U.swap_rows(t, piv->first);
      D.swap_cols(t, piv->second);
      V.swap_cols(t, piv->second);

      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        row_axpy(D, U, i, t, detail::floor_div(D(i, t), D(t, t)));
        if (D(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        col_axpy(D, V, j, t, detail::floor_div(D(t, j), D(t, t)));
        if (D(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // pivot must divide the rest of the block
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < m && !bad; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (!bad) break;
      row_axpy(D, U, t, *bad, BigInt(-1));
    }
    if (t < m && t < n && D(t, t) < 0) {
      for (std::size_t c = 0; c < n; ++c) D(t, c) = -D(t, c);
      for (std::size_t c = 0; c < m; ++c) U(t, c) = -U(t, c);
    }
  }
  return {std::move(U), std::move(V), std::move(D)};
}

inline SmithDecomposition smith_normal_form(const IntMatrix& A) {
  return smith_normal_form(convert<BigInt>(A));
}

/// Row-style Hermite normal form: H = U*A, echelon with positive pivots and
/// entries above each pivot reduced into [0, pivot). Zero rows are dropped.
struct HermiteDecomposition {
  BigMatrix H;
  BigMatrix U;
  std::vector<std::size_t> pivots;
};

inline HermiteDecomposition hermite_normal_form(const BigMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  BigMatrix H = A;
  BigMatrix U = BigMatrix::identity(m);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::optional<std::size_t> p;
      for (std::size_t i = r; i < m; ++i)
        if (H(i, c) != 0 && (!p || abs(H(i, c)) < abs(H(*p, c)))) p = i;
      if (!p) break;
      H.swap_rows(r, *p);
      U.swap_rows(r, *p);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        detail::row_axpy(H, U, i, r, detail::floor_div(H(i, c), H(r, c)));
        if (H(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) {
      for (std::size_t j = 0; j < n; ++j) H(r, j) = -H(r, j);
      for (std::size_t j = 0; j < m; ++j) U(r, j) = -U(r, j);
    }
    for (std::size_t i = 0; i < r; ++i)
      detail::row_axpy(H, U, i, r, detail::floor_div(H(i, c), H(r, c)));
    pivots.push_back(c);
    ++r;
  }
  BigMatrix Hr(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) Hr(i, j) = H(i, j);
  return {std::move(Hr), std::move(U), std::move(pivots)};
}

inline HermiteDecomposition hermite_normal_form(const IntMatrix& A) {
  return hermite_normal_form(convert<BigInt>(A));
}

/// Basis of {x in Z^n : A x = 0} as rows, in Hermite normal form.
inline IntMatrix integer_kernel(const IntMatrix& A) {
  const std::size_t n = A.cols();
  if (A.rows() == 0) return IntMatrix::identity(n);
  auto snf = smith_normal_form(A);
  std::size_t r = snf.rank();
  BigMatrix K(n - r, n);
  for (std::size_t i = r; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) K(i - r, j) = snf.V(j, i);
  if (K.rows() == 0) return IntMatrix(0, n);
  return convert<Int>(hermite_normal_form(K).H);
}

/// Rank over Q of an integer matrix.
inline std::size_t integer_rank(const IntMatrix& A) {
  if (A.rows() == 0 || A.cols() == 0) return 0;
  return hermite_normal_form(A).pivots.size();
}

/// Exact Gaussian elimination over Q; returns the reduced row echelon form
/// and the pivot columns.
inline std::pair<RatMatrix, std::vector<std::size_t>> rref(RatMatrix A) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
    std::size_t p = r;
    while (p < A.rows() && A(p, c) == 0) ++p;
    if (p == A.rows()) continue;
    A.swap_rows(r, p);
    Rational inv = 1 / A(r, c);
    for (std::size_t j = 0; j < A.cols(); ++j) A(r, j) *= inv;
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (i == r || A(i, c) == 0) continue;
      Rational f = A(i, c);
      for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) -= f * A(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return {std::move(A), std::move(piv)};
}

inline std::size_t rational_rank(const RatMatrix& A) { return rref(A).second.size(); }

/// Solves A x = b over Q; nullopt when inconsistent. Free variables are 0.
inline std::optional<RatVector> solve_rational(const RatMatrix& A, const RatVector& b) {
  RatMatrix aug(A.rows(), A.cols() + 1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
    aug(i, A.cols()) = b[i];
  }
  auto [R, piv] = rref(aug);
  if (!piv.empty() && piv.back() == A.cols()) return std::nullopt;
  RatVector x(A.cols(), Rational(0));
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = R(i, A.cols());
  return x;
}

inline Rational determinant(RatMatrix A) {
  const std::size_t n = A.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && A(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      A.swap_rows(p, c);
      det = -det;
    }
    det *= A(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (A(i, c) == 0) continue;
      Rational f = A(i, c) / A(c, c);
      for (std::size_t j = c; j < n; ++j) A(i, j) -= f * A(c, j);
    }
  }
  return det;
}

}  // namespace toric
