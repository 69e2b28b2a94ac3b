#pragma once

#include "toric/coords/binomial.hpp"
#include "toric/cox/homogenize.hpp"
#include "toric/eigsolve/res.hpp"

namespace toric {

struct Solution {
  ComplexVector z;
  std::size_t multiplicity = 1;
  RaySet zero_pattern;
  std::vector<double> residuals;
  bool on_torus = false;
  std::optional<ComplexVector> t;
  bool non_simplicial = false;
  /// eigenvalue table row: lambda_b for every monomial of S_alpha0
  ComplexVector lambda;
};

namespace detail {

inline double max_abs(const ComplexVector& v) {
  double m = 0;
  for (auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

// Greedily picks rows (in the given order) until they generate the saturated
// lattice of the requested rank. Returns nullopt if that never happens.
inline std::optional<std::vector<std::size_t>> spanning_rows(const std::vector<IntVector>& rows,
                                                             const std::vector<std::size_t>& order,
                                                             std::size_t target_rank, std::size_t dim) {
  std::vector<std::size_t> chosen;
  std::size_t rank = 0;
  BigInt index = 0;  // product of elementary divisors once rank is full
  auto measure = [&](const std::vector<std::size_t>& sel) {
    std::vector<IntVector> sub;
    for (auto i : sel) sub.push_back(rows[i]);
    auto snf = smith_normal_form(IntMatrix::from_rows(sub, dim));
    BigInt prod = 1;
    for (auto& d : snf.diagonal())
      if (d != 0) prod *= d;
    return std::make_pair(snf.rank(), prod);
  };
  if (target_rank == 0) return chosen;
  for (auto i : order) {
    auto trial = chosen;
    trial.push_back(i);
    auto [r, idx] = measure(trial);
    if (r > rank || (r == rank && r == target_rank && idx < index)) {
      chosen = std::move(trial);
      rank = r;
      index = idx;
      if (rank == target_rank && index == 1) return chosen;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// |f_i(z)| / sum |c| |z^e| per equation; 0/0 counts as 0.
inline std::vector<double> residuals(const std::vector<CoxPolynomial>& polys, const ComplexVector& z) {
  std::vector<double> r;
  for (auto& f : polys) {
    auto ev = evaluate(f, z);
    r.push_back(ev.scale == 0 ? 0.0 : std::abs(ev.value) / ev.scale);
  }
  return r;
}

inline double max_residual(const std::vector<double>& r) {
  double m = 0;
  for (auto x : r) m = std::max(m, x);
  return m;
}

/// Cox coordinates z with pi(z) = t (roots taken when the rays do not span N).
inline ComplexVector lift_to_cox(const Fan& fan, const ComplexVector& t) {
  auto sol = solve_binomial(fan.F(), t);
  return sol.z;
}

/// t_j = prod_i z_i^{<e_j, u_i>}; only meaningful on the torus.
inline ComplexVector torus_coordinates(const Fan& fan, const ComplexVector& z) {
  ComplexVector t(fan.n, Complex(1));
  for (std::size_t j = 0; j < fan.n; ++j)
    for (std::size_t i = 0; i < fan.num_rays(); ++i)
      if (fan.rays[i][j] != 0) t[j] *= ipow(z[i], fan.rays[i][j]);
  return t;
}

/// Coordinates j with every monomial x^b (b_j > 0) numerically zero.
inline RaySet zero_pattern(const GradedBasis& B0, const ComplexVector& lambda, double zero_tol) {
  RaySet Z;
  const double mx = detail::max_abs(lambda);
  const std::size_t k = B0.degree.rep.size();
  for (std::size_t j = 0; j < k; ++j) {
    bool any = false, all_small = true;
    for (std::size_t b = 0; b < B0.size(); ++b) {
      if (B0.monomials[b][j] <= 0) continue;
      any = true;
      if (std::abs(lambda[b]) > zero_tol * mx) {
        all_small = false;
        break;
      }
    }
    if (any && all_small) Z.push_back(j);
  }
  return Z;
}

/// Torus point from lambda_m ~ t^m.
inline Solution recover_torus_point(const Fan& fan, const GradedBasis& B0, const ComplexVector& lambda,
                                    const Tolerances& tol = {}) {
  const double mx = detail::max_abs(lambda);
  if (mx == 0) throw Error(Stage::Recovery, "all eigenvalues vanish");
  for (auto& l : lambda)
    if (std::abs(l) <= tol.zero_tol * mx) throw Error(Stage::Recovery, "cluster is not a torus point");
  std::size_t m0 = 0;
  for (std::size_t i = 1; i < lambda.size(); ++i)
    if (std::abs(lambda[i]) > std::abs(lambda[m0])) m0 = i;
  std::vector<IntVector> diffs;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < B0.size(); ++i) diffs.push_back(sub(B0.lattice_points[i], B0.lattice_points[m0]));
  for (std::size_t i = 0; i < B0.size(); ++i)
    if (i != m0) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(lambda[a]) > std::abs(lambda[b]); });
  auto rows = detail::spanning_rows(diffs, order, fan.n, fan.n);
  if (!rows) throw Error(Stage::Recovery, "alpha0 insufficient: lattice points do not affinely span");
  std::vector<IntVector> A;
  ComplexVector w;
  for (auto i : *rows) {
    A.push_back(diffs[i]);
    w.push_back(lambda[i] / lambda[m0]);
  }
  auto sol = solve_binomial(IntMatrix::from_rows(A, fan.n), w);
  const ComplexVector& t = sol.z;
  for (std::size_t i = 0; i < B0.size(); ++i) {
    Complex pred = lambda[m0] * monomial_value(diffs[i], t);
    if (std::abs(pred - lambda[i]) > tol.ratio_tol * mx) throw Error(Stage::Recovery, "cluster is not a torus point");
  }
  Solution s;
  s.t = t;
  s.z = lift_to_cox(fan, t);
  s.on_torus = true;
  return s;
}

/// Point on the orbit of the cone spanned by the vanishing coordinates.
inline Solution recover_boundary_point(const Fan& fan, const GradedBasis& B0, const ComplexVector& lambda,
                                       const Tolerances& tol = {}) {
  const double mx = detail::max_abs(lambda);
  if (mx == 0) throw Error(Stage::Recovery, "all eigenvalues vanish");
  RaySet Z = zero_pattern(B0, lambda, tol.zero_tol);
  if (!fan.is_cone(Z)) throw Error(Stage::Recovery, "inconsistent vanishing pattern");

  RaySet freevars;
  for (std::size_t j = 0; j < fan.num_rays(); ++j)
    if (!std::binary_search(Z.begin(), Z.end(), j)) freevars.push_back(j);

  // monomials not involving the vanishing coordinates live on the orbit
  std::vector<std::size_t> face;
  for (std::size_t b = 0; b < B0.size(); ++b) {
    bool ok = true;
    for (auto j : Z)
      if (B0.monomials[b][j] != 0) ok = false;
    if (ok) face.push_back(b);
  }
  if (face.empty()) throw Error(Stage::Recovery, "alpha0 insufficient on orbit");
  std::size_t b0 = face[0];
  for (auto b : face)
    if (std::abs(lambda[b]) > std::abs(lambda[b0])) b0 = b;

  IntMatrix FZ(Z.size(), fan.n);
  for (std::size_t r = 0; r < Z.size(); ++r)
    for (std::size_t c = 0; c < fan.n; ++c) FZ(r, c) = fan.rays[Z[r]][c];
  const std::size_t rankZ = integer_rank(FZ);
  const std::size_t orbit_dim = fan.n - rankZ;

  std::vector<IntVector> mdiff, ediff;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < face.size(); ++i) {
    mdiff.push_back(sub(B0.lattice_points[face[i]], B0.lattice_points[b0]));
    IntVector e;
    for (auto j : freevars) e.push_back(B0.monomials[face[i]][j] - B0.monomials[b0][j]);
    ediff.push_back(std::move(e));
    if (face[i] != b0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(lambda[face[a]]) > std::abs(lambda[face[b]]);
  });
  auto rows = detail::spanning_rows(mdiff, order, orbit_dim, fan.n);
  if (!rows) throw Error(Stage::Recovery, "alpha0 insufficient on orbit");

  std::vector<IntVector> A;
  ComplexVector w;
  for (auto i : *rows) {
    A.push_back(ediff[i]);
    w.push_back(lambda[face[i]] / lambda[b0]);
  }
  ComplexVector zfree(freevars.size(), Complex(1));
  if (!A.empty()) zfree = solve_binomial(IntMatrix::from_rows(A, freevars.size()), w).z;

  Solution s;
  s.z.assign(fan.num_rays(), Complex(0));
  for (std::size_t i = 0; i < freevars.size(); ++i) s.z[freevars[i]] = zfree[i];
  s.zero_pattern = Z;
  s.on_torus = Z.empty();
  s.non_simplicial = Z.size() > rankZ;
  for (std::size_t i = 0; i < face.size(); ++i) {
    Complex pred = lambda[b0] * monomial_value(ediff[i], zfree);
    if (std::abs(pred - lambda[face[i]]) > tol.ratio_tol * mx)
      throw Error(Stage::Recovery, "cluster is not consistent with a point on its orbit");
  }
  if (s.on_torus) s.t = torus_coordinates(fan, s.z);
  return s;
}

/// Torus recovery when no coordinate vanishes, boundary recovery otherwise.
inline Solution recover_point(const Fan& fan, const GradedBasis& B0, const ComplexVector& lambda,
                              const Tolerances& tol = {}) {
  if (zero_pattern(B0, lambda, tol.zero_tol).empty()) return recover_torus_point(fan, B0, lambda, tol);
  return recover_boundary_point(fan, B0, lambda, tol);
}


/// recover_point with residuals filled in. Points far out in the torus have
/// eigenvalues at rounding level and look like boundary points; they are read
/// as torus points when that fits the equations better by torus_margin.
inline Solution recover_point(const HomogeneousSystem& sys, const GradedBasis& B0, const ComplexVector& lambda,
                              const Tolerances& tol = {}) {
  Tolerances loose = tol;
  loose.zero_tol = 0;
  if (zero_pattern(B0, lambda, tol.zero_tol).empty()) {
    Solution s = recover_torus_point(sys.fan, B0, lambda, loose);
    s.residuals = residuals(sys.polys, s.z);
    return s;
  }
  std::optional<Solution> bnd, tor;
  std::optional<Error> failure;
  try {
    bnd = recover_boundary_point(sys.fan, B0, lambda, tol);
    bnd->residuals = residuals(sys.polys, bnd->z);
  } catch (const Error& e) {
    failure = e;
  }
  try {
    tor = recover_torus_point(sys.fan, B0, lambda, loose);
    tor->residuals = residuals(sys.polys, tor->z);
  } catch (const std::exception&) {
  }
  if (tor && (!bnd || max_residual(tor->residuals) < tol.torus_margin * max_residual(bnd->residuals))) return *tor;
  if (bnd) return *bnd;
  throw *failure;
}

}  // namespace toric
