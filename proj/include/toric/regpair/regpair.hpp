#pragma once

#include "toric/eigsolve/res.hpp"
#include "toric/toric/cohomology.hpp"

namespace toric {

enum class Provenance { SumOfDegrees, Codegree, Macaulay, Multihomogeneous, Weighted, VanishingTest, UserSupplied };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::SumOfDegrees: return "SumOfDegrees";
    case Provenance::Codegree: return "Codegree";
    case Provenance::Macaulay: return "Macaulay";
    case Provenance::Multihomogeneous: return "Multihomogeneous";
    case Provenance::Weighted: return "Weighted";
    case Provenance::VanishingTest: return "VanishingTest";
    case Provenance::UserSupplied: return "UserSupplied";
  }
  return "?";
}

struct RegularityPair {
  DivisorClass alpha;
  DivisorClass alpha0;
  Provenance provenance = Provenance::UserSupplied;
  bool verified = false;
  std::optional<std::size_t> corank_alpha, corank_sum;
  std::size_t delta_plus = 0;
  /// alpha or alpha0 is only known to be basepoint free away from V(I)
  bool requires_bpf_check = false;
  std::vector<std::string> notes;
};

/// Lattice polytope P0 with each Newton polytope a translate of d_j P0.
struct UnmixedBase {
  Polytope base;
  DivisorClass alpha0;
  std::vector<Int> d;
  Int codegree = 0;
};

/// Fan of P(q_0..q_n) with generator alpha0 of Cl = Z.
struct WeightedStructure {
  IntVector q;
  Int ell = 1;
  DivisorClass alpha0;
  std::vector<Int> e;  // deg f_i = e_i alpha0
};

struct SystemProfile {
  bool is_square = false;
  std::vector<DivisorClass> degrees;
  std::optional<UnmixedBase> unmixed;
  std::optional<ProductStructure> product;
  std::optional<WeightedStructure> weighted;
};

namespace detail {

// (P - v0) / g with v0 the smallest vertex and g the gcd of all vertex differences.
inline std::pair<Polytope, Int> primitive_shape(const Polytope& P) {
  auto V = P.integer_vertices();
  const IntVector& v0 = V.front();
  Int g = 0;
  for (auto& v : V)
    for (std::size_t i = 0; i < v.size(); ++i) g = std::gcd(g, v[i] - v0[i]);
  if (g == 0) return {Polytope::point(IntVector(P.ambient_dim(), 0)), 0};
  std::vector<IntVector> W;
  for (auto& v : V) {
    IntVector w = sub(v, v0);
    for (auto& x : w) x /= g;
    W.push_back(std::move(w));
  }
  return {Polytope::from_points(W, P.ambient_dim()), g};
}

// Newton polytope of a homogeneous polynomial, in its own M-coordinates.
inline Polytope support_polytope(const CoxPolynomial& f, std::size_t n) {
  std::vector<IntVector> pts;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    if (f.coeffs[i] != Complex(0)) pts.push_back(f.basis->lattice_points[i]);
  if (pts.empty()) throw Error(Stage::Pair, "zero polynomial in the system");
  return Polytope::from_points(pts, n);
}

inline bool lattice_points_span(const Polytope& P) {
  auto pts = lattice_points(P);
  if (pts.empty()) return false;
  std::vector<IntVector> diffs;
  for (auto& p : pts) diffs.push_back(sub(p, pts.front()));
  if (diffs.size() < 2 && P.ambient_dim() > 0) return false;
  auto snf = smith_normal_form(IntMatrix::from_rows(diffs, P.ambient_dim()));
  if (snf.rank() != P.ambient_dim()) return false;
  for (auto& d : snf.diagonal())
    if (d != 0 && d != 1) return false;
  return true;
}

inline std::size_t degree_dim(const Fan& fan, const DivisorClass& a) { return graded_basis(fan, a).size(); }

inline DivisorClass sum_of(const std::vector<DivisorClass>& ds, const ClassGroup& cl) {
  DivisorClass s = cl.divisor(IntVector(cl.num_rays(), 0));
  for (auto& d : ds) s = s + d;
  return s;
}

inline Int lcm_of(const IntVector& v) {
  Int l = 1;
  for (auto x : v) l = std::lcm(l, x);
  return l;
}

inline void require_square(const HomogeneousSystem& sys) {
  if (sys.size() > sys.fan.n)
    throw Error(Stage::Pair, "no default pair for overdetermined systems; supply --pair");
  if (sys.size() < sys.fan.n)
    throw Error(Stage::Pair, "underdetermined system: fewer equations than variables");
}

}  // namespace detail

inline SystemProfile profile_system(const HomogeneousSystem& sys) {
  SystemProfile p;
  p.is_square = sys.is_square();
  p.degrees = sys.degrees;
  const Fan& fan = sys.fan;
  const std::size_t n = fan.n;

  std::optional<Polytope> base;
  std::vector<Int> d;
  bool unmixed = !sys.polys.empty();
  for (auto& f : sys.polys) {
    auto [Q, g] = detail::primitive_shape(detail::support_polytope(f, n));
    if (g == 0 || (base && Q.vertices() != base->vertices())) {
      unmixed = false;
      break;
    }
    if (!base) base = Q;
    d.push_back(g);
  }
  if (unmixed && base->full_dimensional()) {
    try {
      UnmixedBase u{*base, divisor_of_polytope(fan, sys.cl, *base), d, codegree(*base)};
      p.unmixed = std::move(u);
    } catch (const FanError&) {
    }
  }

  p.product = product_structure(fan, sys.cl);

  if (sys.cl.rank() == 1 && sys.cl.torsion().empty() && fan.num_rays() == n + 1 && fan.is_simplicial()) {
    WeightedStructure w;
    const IntMatrix& G = sys.cl.free_map();
    Int sign = G(0, 0) < 0 ? -1 : 1;
    bool positive = true;
    for (std::size_t j = 0; j <= n; ++j) {
      w.q.push_back(sign * G(0, j));
      if (w.q.back() <= 0) positive = false;
    }
    if (positive) {
      w.ell = detail::lcm_of(w.q);
      w.alpha0 = sys.cl.from_coordinates({sign});
      for (auto& a : sys.degrees) w.e.push_back(sign * a.deg.free[0]);
      p.weighted = std::move(w);
    }
  }
  return p;
}

/// Higher cohomology of beta - sum_{i in J} alpha_i vanishes for every J.
/// Unknown cohomology counts as failure.
inline bool vanishing_pair(const HomogeneousSystem& sys, const DivisorClass& beta) {
  const std::size_t s = sys.degrees.size();
  if (s > 20) throw std::invalid_argument("vanishing_pair: too many equations");
  for (std::size_t mask = 0; mask < (std::size_t{1} << s); ++mask) {
    DivisorClass g = beta;
    for (std::size_t i = 0; i < s; ++i)
      if (mask >> i & 1) g = g - sys.degrees[i];
    if (!higher_cohomology_vanishes(sys.fan, sys.cl, g)) return false;
  }
  return true;
}

/// Candidate for alpha0 with the fewest sections among the primitive shapes of
/// the Minkowski sum and of the individual Newton polytopes.
inline DivisorClass default_alpha0(const HomogeneousSystem& sys) {
  const Fan& fan = sys.fan;
  std::vector<Polytope> cands;
  std::vector<Polytope> newton;
  for (auto& f : sys.polys) newton.push_back(detail::support_polytope(f, fan.n));
  cands.push_back(detail::primitive_shape(minkowski_sum(newton)).first);
  for (auto& P : newton) cands.push_back(detail::primitive_shape(P).first);

  std::optional<DivisorClass> best;
  std::size_t best_dim = 0;
  for (auto& Q : cands) {
    if (!Q.full_dimensional() || !detail::lattice_points_span(Q)) continue;
    DivisorClass a;
    try {
      a = divisor_of_polytope(fan, sys.cl, Q);
    } catch (const FanError&) {
      continue;
    }
    std::size_t dim = lattice_points(Q).size();
    if (!best || dim < best_dim) {
      best = a;
      best_dim = dim;
    }
  }
  if (best) return *best;
  if (sys.degrees.empty()) throw Error(Stage::Pair, "empty system");
  return sys.degrees.front();
}

inline RegularityPair default_pair(const HomogeneousSystem& sys) {
  detail::require_square(sys);
  RegularityPair r;
  r.alpha = detail::sum_of(sys.degrees, sys.cl);
  r.alpha0 = default_alpha0(sys);
  r.provenance = Provenance::SumOfDegrees;
  if (!is_globally_basepoint_free(sys.fan, r.alpha0)) r.requires_bpf_check = true;
  return r;
}

/// Every applicable sufficient criterion, in order of preference.
inline std::vector<RegularityPair> candidate_pairs(const HomogeneousSystem& sys, const SystemProfile& prof) {
  detail::require_square(sys);
  const ClassGroup& cl = sys.cl;
  std::vector<RegularityPair> out;
  auto push = [&](DivisorClass a, DivisorClass a0, Provenance p, bool bpf_check = false) {
    RegularityPair r;
    r.alpha = std::move(a);
    r.alpha0 = std::move(a0);
    r.provenance = p;
    r.requires_bpf_check = bpf_check;
    out.push_back(std::move(r));
  };

  if (prof.product && prof.product->blocks.size() == 1) {
    Int s = 0;
    for (auto& a : sys.degrees) s += a.deg.free[0];
    Int k = s - static_cast<Int>(prof.product->dims[0]);
    if (k >= 0) push(cl.from_coordinates({k}), cl.from_coordinates({1}), Provenance::Macaulay);
  }
  if (prof.product && prof.product->blocks.size() > 1) {
    const auto& ps = *prof.product;
    IntVector a(ps.blocks.size(), 0), ones(ps.blocks.size(), 1);
    for (auto& d : sys.degrees) a = add(a, d.deg.free);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] -= static_cast<Int>(ps.dims[j]);
    auto alpha = cl.from_coordinates(a), alpha0 = cl.from_coordinates(ones);
    bool nonneg = std::all_of(a.begin(), a.end(), [](Int x) { return x >= 0; });
    if (nonneg && vanishing_pair(sys, alpha) && vanishing_pair(sys, alpha + alpha0))
      push(alpha, alpha0, Provenance::Multihomogeneous);
  }
  if (prof.weighted && !prof.product) {
    const auto& w = *prof.weighted;
    Int se = 0, sq = 0;
    for (auto x : w.e) se += x;
    for (auto x : w.q) sq += x;
    Int dreg = se - sq + 1;
    if (dreg >= 0) push(w.alpha0 * dreg, w.alpha0 * w.ell, Provenance::Weighted, true);
  }
  if (prof.unmixed) {
    const auto& u = *prof.unmixed;
    Int s = 0;
    for (auto x : u.d) s += x;
    Int k = s - u.codegree + 1;
    if (k >= 0 && detail::lattice_points_span(u.base)) push(u.alpha0 * k, u.alpha0, Provenance::Codegree);
  }
  {
    DivisorClass a0 = default_alpha0(sys);
    DivisorClass total = detail::sum_of(sys.degrees, cl);
    if (is_globally_basepoint_free(sys.fan, a0)) {
      std::optional<DivisorClass> found;
      for (Int j = 1; j <= 64; ++j) {
        DivisorClass beta = total - a0 * j;
        if (!is_effective(sys.fan, beta)) break;
        if (!is_globally_basepoint_free(sys.fan, beta)) break;
        if (!vanishing_pair(sys, beta) || !vanishing_pair(sys, beta + a0)) break;
        found = beta;
      }
      if (found) push(*found, a0, Provenance::VanishingTest);
    }
  }
  out.push_back(default_pair(sys));
  return out;
}

/// The candidate with the smallest dim S_{alpha+alpha0}.
inline RegularityPair improved_pair(const HomogeneousSystem& sys) {
  auto prof = profile_system(sys);
  auto cands = candidate_pairs(sys, prof);
  std::size_t best = 0, best_dim = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    std::size_t d = detail::degree_dim(sys.fan, cands[i].alpha + cands[i].alpha0);
    if (d < best_dim) {
      best = i;
      best_dim = d;
    }
  }
  return cands[best];
}

/// Sets verified = (corank at alpha == corank at alpha + alpha0).
inline RegularityPair verify_pair(const HomogeneousSystem& sys, RegularityPair pair, const Tolerances& tol = {}) {
  pair.corank_alpha = corank(sys, pair.alpha, tol);
  pair.corank_sum = corank(sys, pair.alpha + pair.alpha0, tol);
  pair.delta_plus = *pair.corank_alpha;
  pair.verified = *pair.corank_alpha == *pair.corank_sum;
  return pair;
}

}  // namespace toric
