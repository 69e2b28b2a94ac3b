#pragma once

#include "toric/coords/recover.hpp"
#include "toric/eigsolve/schur.hpp"
#include "toric/regpair/regpair.hpp"

#include <chrono>

namespace toric {

struct SolveOptions {
  std::uint64_t seed = 0;
  Tolerances tol;
  /// (alpha, alpha0) supplied by the caller instead of the automatic choice.
  std::optional<std::pair<DivisorClass, DivisorClass>> pair;
  bool verify = true;
  FamilyOptions family;
  /// Retry clustering with a 10x larger gap (up to max_cluster_gap) on leakage.
  bool adaptive_clustering = true;
  double max_cluster_gap = 1e-1;
};

struct SolveDiagnostics {
  std::pair<std::size_t, std::size_t> res_shape{0, 0};
  std::vector<double> singular_values;
  double rank_gap = 0;
  double condition = 0;
  int h0_attempts = 0;
  double leakage = 0;
  double cluster_gap = 0;
  double commutator = 0;
  std::optional<bool> bpf_ok;
  std::vector<std::string> notes;
  std::map<std::string, double> timings_ms;
};

struct SolutionSet {
  std::vector<Solution> solutions;
  std::size_t delta = 0;
  std::size_t delta_plus = 0;
  std::uint64_t seed = 0;
  RegularityPair pair;
  Tolerances tol;
  SolveDiagnostics diag;
  MultiplicationFamily family;

  double max_residual() const {
    double m = 0;
    for (auto& s : solutions)
      for (auto r : s.residuals) m = std::max(m, r);
    return m;
  }
};

/// max ||M_a M_b - M_b M_a|| / max_c ||M_c||^2 over the family.
inline double commutator_norm(const std::vector<CMatrix>& Ms) {
  double scale = 0, worst = 0;
  for (auto& M : Ms) scale = std::max(scale, M.norm());
  if (scale == 0) return 0;
  for (std::size_t a = 0; a < Ms.size(); ++a)
    for (std::size_t b = a + 1; b < Ms.size(); ++b)
      worst = std::max(worst, (Ms[a] * Ms[b] - Ms[b] * Ms[a]).norm());
  return worst / (scale * scale);
}

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double lap() {
    auto t = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t - t0_).count();
    t0_ = t;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

inline RegularityPair select_pair(const HomogeneousSystem& sys, const SolveOptions& opt) {
  const Tolerances& tol = opt.tol;
  if (opt.pair) {
    RegularityPair r;
    r.alpha = opt.pair->first;
    r.alpha0 = opt.pair->second;
    r.provenance = Provenance::UserSupplied;
    if (!is_globally_basepoint_free(sys.fan, r.alpha0)) r.requires_bpf_check = true;
    if (!opt.verify) return r;
    r = verify_pair(sys, r, tol);
    if (!r.verified)
      throw Error(Stage::Pair, "supplied pair failed verification: corank " + std::to_string(*r.corank_alpha) +
                                   " at alpha vs " + std::to_string(*r.corank_sum) + " at alpha+alpha0");
    return r;
  }
  RegularityPair best = improved_pair(sys);
  if (!opt.verify) return best;
  best = verify_pair(sys, best, tol);
  if (best.verified) return best;
  RegularityPair fallback = verify_pair(sys, default_pair(sys), tol);
  fallback.notes.push_back(std::string(provenance_name(best.provenance)) + " pair failed verification");
  if (!fallback.verified) throw Error(Stage::Pair, "no verified regularity pair; supply --pair");
  return fallback;
}

}  // namespace detail

/// Eigenvalue pipeline on a homogeneous system: pair, cokernel, multiplication
/// family, clustered Schur form, per-cluster coordinates and residuals.
inline SolutionSet solve(const HomogeneousSystem& sys, const SolveOptions& opt = {}) {
  SolutionSet out;
  out.seed = opt.seed;
  out.tol = opt.tol;
  Rng rng(opt.seed);
  detail::Stopwatch sw;

  out.pair = detail::select_pair(sys, opt);
  out.diag.timings_ms["pair"] = sw.lap();
  const DivisorClass beta = out.pair.alpha + out.pair.alpha0;

  auto res = assemble_res(sys, beta);
  out.diag.res_shape = {res.num_rows(), res.num_cols()};
  auto cok = cokernel(res, opt.tol);
  out.delta_plus = cok.delta_plus;
  out.diag.rank_gap = cok.gap;
  out.diag.singular_values.assign(cok.singular_values.data(), cok.singular_values.data() + cok.singular_values.size());
  out.diag.timings_ms["cokernel"] = sw.lap();
  if (out.delta_plus == 0) {
    out.diag.notes.push_back("no solutions on X");
    return out;
  }

  out.family = multiplication_family(cok, *res.rows, sys, out.pair.alpha, out.pair.alpha0, rng, opt.tol, opt.family);
  out.diag.condition = out.family.condition;
  out.diag.h0_attempts = out.family.attempts;
  out.diag.commutator = commutator_norm(out.family.matrices);
  out.diag.timings_ms["family"] = sw.lap();

  Tolerances ctol = opt.tol;
  SchurClustering sc;
  for (;;) {
    try {
      sc = schur_cluster(out.family, rng, ctol);
      break;
    } catch (const Error& e) {
      if (e.stage() != Stage::Clustering || !opt.adaptive_clustering || ctol.cluster_gap * 10 > opt.max_cluster_gap * 1.0001)
        throw;
      ctol.cluster_gap *= 10;
      out.diag.notes.push_back("cluster_gap raised to " + std::to_string(ctol.cluster_gap));
    }
  }
  out.diag.leakage = sc.leakage;
  out.diag.cluster_gap = sc.cluster_gap;
  out.diag.timings_ms["clustering"] = sw.lap();

  const GradedBasis& B0 = *out.family.basis_alpha0;
  std::vector<ComplexVector> points;
  for (auto& c : sc.clusters) {
    Solution s = recover_point(sys, B0, c.lambda, opt.tol);
    s.multiplicity = c.size;
    s.lambda = c.lambda;
    points.push_back(s.z);
    out.solutions.push_back(std::move(s));
  }
  out.delta = out.solutions.size();
  out.diag.timings_ms["recovery"] = sw.lap();

  bool ok = is_basepoint_free_on(sys.fan, out.pair.alpha0, points, opt.tol.bpf_tol);
  if (out.pair.requires_bpf_check) ok = ok && is_basepoint_free_on(sys.fan, out.pair.alpha, points, opt.tol.bpf_tol);
  out.diag.bpf_ok = ok;
  if (!ok) out.diag.notes.push_back("alpha0 has a basepoint at a computed solution; results are not certified");
  return out;
}

inline SolutionSet solve(const std::vector<LaurentPolynomial>& laurent, const SolveOptions& opt = {}) {
  return solve(homogenize(laurent), opt);
}

}  // namespace toric
