// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance [--expect-fail N[,M...]] [--data DIR]
// Exit status is 0 iff the set of failing criteria equals the expected set
// (empty by default).

#include "oracles.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

using namespace toric;

namespace {

std::string data_dir = TORIC_DATA_DIR;

std::string data(const std::string& name) { return data_dir + "/" + name; }

struct Report {
  std::vector<std::string> failed;
  std::vector<std::string> info;

  void check(bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  }
  void note(const std::string& s) { info.push_back(s); }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string vec_str(const IntVector& v) { return to_string(v); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

// z and w lie in the same torus orbit of X: equal zero sets and equal values
// of every character of M orthogonal to the rays of that set.
bool same_orbit_point(const Fan& fan, const ComplexVector& z, const RaySet& pattern, const ComplexVector& w,
                      double tol) {
  IntMatrix A(pattern.size(), fan.n);
  for (std::size_t r = 0; r < pattern.size(); ++r)
    for (std::size_t j = 0; j < fan.n; ++j) A(r, j) = fan.rays[pattern[r]][j];
  IntMatrix K = integer_kernel(A);
  for (std::size_t k = 0; k < K.rows(); ++k) {
    IntVector m(fan.n);
    for (std::size_t j = 0; j < fan.n; ++j) m[j] = K(k, j);
    Complex cz = 1, cw = 1;
    for (std::size_t i = 0; i < fan.num_rays(); ++i) {
      Int e = dot(fan.rays[i], m);
      if (e == 0) continue;
      cz *= std::pow(z[i], static_cast<double>(e));
      cw *= std::pow(w[i], static_cast<double>(e));
    }
    if (!(std::abs(cz - cw) <= tol * std::max(1.0, std::abs(cw)))) return false;
  }
  return true;
}

double closest_torus(const std::vector<Solution>& sols, const ComplexVector& t) {
  double best = std::numeric_limits<double>::infinity();
  for (auto& s : sols) {
    if (!s.t) continue;
    double d = 0;
    for (std::size_t j = 0; j < t.size(); ++j) d = std::max(d, std::abs((*s.t)[j] - t[j]));
    best = std::min(best, d);
  }
  return best;
}

void criterion1(Report& r) {
  auto t0 = std::chrono::steady_clock::now();
  auto sf = io::load_system(data("lines27.json"));
  auto rep = io::cmd_regpair(sf, {});
  auto* def = rep.find("default");
  auto* imp = rep.find("improved");
  r.check(def && io::class_coordinates(def->pair.alpha) == IntVector{6, 6} &&
              io::class_coordinates(def->pair.alpha0) == IntVector{1, 1},
          "default pair ((6,6),(1,1))");
  r.check(def && def->shape == std::pair<std::size_t, std::size_t>{1296, 2256}, "default shape 1296x2256");
  r.check(imp && io::class_coordinates(imp->pair.alpha) == IntVector{4, 4} &&
              io::class_coordinates(imp->pair.alpha0) == IntVector{1, 1},
          "improved pair ((4,4),(1,1))");
  r.check(imp && imp->shape == std::pair<std::size_t, std::size_t>{441, 552}, "improved shape 441x552");
  if (def && imp)
    r.note("shapes " + std::to_string(def->shape.first) + "x" + std::to_string(def->shape.second) + " -> " +
           std::to_string(imp->shape.first) + "x" + std::to_string(imp->shape.second));

  auto S = io::cmd_solve(sf, {});
  r.check(S.delta_plus == 45, "delta+ = 45");
  std::size_t torus = 0, torus_ok = 0, boundary = 0, boundary_ok = 0;
  double worst = 0;
  for (auto& s : S.solutions) {
    if (s.on_torus) {
      ++torus;
      double m = max_residual(s.residuals);
      worst = std::max(worst, m);
      if (m <= 1e-8) ++torus_ok;
    } else {
      ++boundary;
      if (s.multiplicity == 6 && s.zero_pattern == RaySet{2, 3}) ++boundary_ok;
    }
  }
  r.check(torus == 27 && torus_ok == 27, "27 torus solutions with residual <= 1e-8");
  r.check(boundary == 3 && boundary_ok == 3, "3 boundary solutions, multiplicity 6, zero pattern {x3,x4}");
  double secs = seconds_since(t0);
  r.check(secs <= 120, "runtime <= 120 s");
  r.note("delta+ " + std::to_string(S.delta_plus) + ", torus " + std::to_string(torus) + ", boundary " +
         std::to_string(boundary) + ", worst torus residual " + fmt("%.1e", worst) + ", " + fmt("%.1f s", secs));
}

void criterion2(Report& r) {
  auto t0 = std::chrono::steady_clock::now();
  auto sf = io::load_system(data("intro_template.json"));
  auto rows = io::cmd_sweep(sf, "e", io::parse_grid("0:14:0.5"), {});
  r.check(rows.size() == 29, "29 grid points");
  bool three = true, small = true;
  double worst = 0;
  for (auto& row : rows) {
    three = three && row.status == "ok" && row.num_solutions == 3 && row.delta_plus == 3;
    small = small && row.max_res <= 1e-12;
    worst = std::max(worst, row.max_res);
  }
  r.check(three, "3 solutions at every e");
  r.check(small, "max residual <= 1e-12");
  double norm8 = std::numeric_limits<double>::quiet_NaN();
  for (auto& row : rows)
    if (row.value == 8) norm8 = row.max_norm;
  r.check(std::abs(norm8 / 1.414213532799484e8 - 1) <= 0.01, "max norm at e = 8 within 1% of 1.4142e8");
  double secs = seconds_since(t0);
  r.check(secs <= 60, "runtime <= 60 s");
  r.note("worst residual " + fmt("%.1e", worst) + ", norm at e=8 " + fmt("%.10e", norm8) + ", " + fmt("%.2f s", secs));
}

void criterion3(Report& r) {
  auto S = io::cmd_solve(io::load_system(data("hirzebruch.json")), {});
  r.check(S.solutions.size() == 3, "3 solutions");
  const double s = std::sqrt(0.5);
  double worst = 0;
  for (auto t : {ComplexVector{-2, 1}, ComplexVector{s, -3 * s + 2}, ComplexVector{-s, 3 * s + 2}})
    worst = std::max(worst, closest_torus(S.solutions, t));
  r.check(worst <= 1e-10, "roots within 1e-10");
  r.note("largest coordinate error " + fmt("%.1e", worst));
}

void criterion4(Report& r) {
  auto H = io::build_system(io::load_system(data("hirzebruch.json")));
  // rays (1,0), (0,1), (0,-1), (-1,-1); D3 is the third divisor
  const DivisorClass alpha = H.cl.divisor({0, 0, 2, 4});
  auto bad = verify_pair(H, {alpha, H.cl.divisor({0, 0, 2, 0})});
  auto good = verify_pair(H, {alpha, H.cl.divisor({0, 0, 1, 0})});
  r.check(!bad.verified, "[2D3] rejected");
  r.check(good.verified, "[D3] accepted");
  r.note("[2D3] corank " + std::to_string(*bad.corank_alpha) + " vs " + std::to_string(*bad.corank_sum) + ", [D3] corank " +
         std::to_string(*good.corank_alpha) + " vs " + std::to_string(*good.corank_sum));
}

void criterion5(Report& r) {
  auto sf = io::load_system(data("double_pillow.json"));
  auto H = io::build_system(sf);
  auto S = io::cmd_solve(sf, {});
  std::vector<std::size_t> mu;
  for (auto& s : S.solutions) mu.push_back(s.multiplicity);
  std::sort(mu.begin(), mu.end());
  r.check(S.solutions.size() == 2 && mu == std::vector<std::size_t>{2, 2}, "delta = 2 with multiplicities (2,2)");

  auto found = [&](const RaySet& pattern, const ComplexVector& w) {
    for (auto& s : S.solutions)
      if (s.zero_pattern == pattern && same_orbit_point(H.fan, s.z, pattern, w, 1e-8)) return true;
    return false;
  };
  r.check(found({0}, {0, 1, 1, 1}), "orbit of (0,1,1,1) with zero pattern {x1}");
  r.check(found({2}, {1, 1, 0, Complex(0, 1)}), "orbit of (1,1,0,i) with zero pattern {x3}");
  double worst = 0;
  std::string patterns;
  for (auto& s : S.solutions) {
    worst = std::max(worst, max_residual(s.residuals));
    std::string p;
    for (auto j : s.zero_pattern) p += (p.empty() ? "x" : ",x") + std::to_string(j + 1);
    patterns += " {" + p + "}";
  }
  r.check(worst <= 1e-10, "residuals <= 1e-10");

  const DivisorClass alpha = H.cl.divisor({2, 2, 2, 2}), alpha0 = H.cl.divisor({1, 1, 1, 1});
  auto R = assemble_res(H, alpha + alpha0);
  auto cok = cokernel(R);
  auto Ba = make_basis(H.fan, alpha), B0 = make_basis(H.fan, alpha0);
  FamilyOptions fo;
  std::vector<std::size_t> cols;
  for (auto e : {IntVector{0, 0, 4, 4}, IntVector{1, 1, 3, 3}, IntVector{1, 3, 3, 1}, IntVector{4, 4, 0, 0}})
    cols.push_back(*Ba->find(e));
  fo.fixed_columns = cols;
  ComplexVector h0(B0->size(), Complex(0));
  h0[*B0->find({0, 2, 2, 0})] = 1;
  fo.fixed_h0 = h0;
  Rng rng(0);
  auto fam = multiplication_family(cok, *R.rows, H, alpha, alpha0, rng, {}, fo);
  const CMatrix& Mh0 = fam.matrices[*B0->find({0, 2, 2, 0})];
  const CMatrix& Mg = fam.matrices[*B0->find({1, 1, 1, 1})];
  CMatrix printed(4, 4);
  printed << 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, -1, 0, 0, 0, 0;
  double e_h0 = (Mh0 - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff();
  double e_g = (Mg - printed).cwiseAbs().maxCoeff();
  r.check(e_h0 <= 1e-12, "M_{x2^2 x3^2} = I in the fixed bases");
  r.check(e_g <= 1e-12, "M_{x1 x2 x3 x4} equals the displayed matrix");
  std::ostringstream col4;
  for (Eigen::Index i = 0; i < 4; ++i) {
    double x = Mg(i, 3).real();
    col4 << (i ? "," : "(") << (std::abs(x) < 1e-12 ? 0.0 : x);
  }
  col4 << ")";
  r.note("zero patterns" + patterns + ", worst residual " + fmt("%.1e", worst) + ", |M_h0 - I| " + fmt("%.1e", e_h0) +
         ", computed column 4 of M_g " + col4.str());
}

void criterion6(Report& r) {
  auto sf = io::load_system(data("plane_2_3.json"));
  auto rep = io::cmd_regpair(sf, {});
  auto* imp = rep.find("improved");
  r.check(imp && io::class_coordinates(imp->pair.alpha) == IntVector{3} &&
              io::class_coordinates(imp->pair.alpha0) == IntVector{1},
          "improved pair (3,1)");
  auto S = io::cmd_solve(sf, {});
  r.check(S.delta_plus == 6, "delta+ = 6");
  r.check(S.max_residual() <= 1e-10, "residuals <= 1e-10");
  r.note("delta+ " + std::to_string(S.delta_plus) + ", worst residual " + fmt("%.1e", S.max_residual()));
}

void criterion7(Report& r) {
  std::mt19937_64 rng(7);
  auto uni = [&](Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); };

  bool snf_ok = true;
  for (int trial = 0; trial < 1000 && snf_ok; ++trial) {
    std::size_t m = static_cast<std::size_t>(uni(1, 5)), n = static_cast<std::size_t>(uni(1, 5));
    IntMatrix A(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) A(i, j) = uni(-20, 20);
    auto snf = smith_normal_form(A);
    snf_ok = snf.U * convert<BigInt>(A) * snf.V == snf.D && oracle::unimodular(snf.U) && oracle::unimodular(snf.V);
    auto d = snf.diagonal();
    BigInt prod = 1;
    for (std::size_t k = 1; k <= d.size() && snf_ok; ++k) {
      snf_ok = d[k - 1] >= 0;
      if (k < d.size()) snf_ok = snf_ok && (d[k - 1] == 0 ? d[k] == 0 : d[k] % d[k - 1] == 0);
      prod *= d[k - 1];
      if (trial % 10 == 0) snf_ok = snf_ok && prod == oracle::determinantal_divisor(A, k);
    }
  }
  r.check(snf_ok, "Smith normal form identities on 1000 matrices");

  bool lp_ok = true;
  int polys = 0;
  while (polys < 200 && lp_ok) {
    std::size_t n = polys < 150 ? 2 : 3;
    std::vector<IntVector> pts;
    for (int i = 0; i < 6; ++i) {
      IntVector p(n);
      for (auto& x : p) x = uni(-3, 3);
      pts.push_back(p);
    }
    auto P = Polytope::from_points(pts);
    if (!P.full_dimensional()) continue;
    auto mine = lattice_points(P);
    std::sort(mine.begin(), mine.end());
    lp_ok = mine == oracle::brute_lattice_points(pts);
    ++polys;
  }
  r.check(lp_ok, "lattice points vs brute force on 200 polytopes");

  int bkk = 0, bkk_ok = 0;
  while (bkk < 50) {
    std::vector<LaurentPolynomial> sys;
    std::vector<Polytope> P;
    for (int i = 0; i < 2; ++i) {
      LaurentPolynomial f{2, {}};
      Int k = uni(2, 5);
      for (Int j = 0; j < k; ++j) f.terms.push_back({{uni(0, 3), uni(0, 3)}, random_complex(rng)});
      sys.push_back(f);
      P.push_back(f.newton_polytope());
    }
    if (!minkowski_sum(P).full_dimensional() || mixed_volume(P) == 0) continue;
    ++bkk;
    try {
      auto S = solve(sys);
      if (static_cast<Int>(S.delta_plus) == mixed_volume(P)) ++bkk_ok;
    } catch (const Error&) {
    }
  }
  r.check(bkk_ok == 50, "mixed volume = delta+ on 50 random systems");

  double comm = 0;
  for (auto name : {"double_pillow.json", "hirzebruch.json", "plane_2_3.json", "lines27.json"}) {
    auto S = io::cmd_solve(io::load_system(data(name)), {});
    comm = std::max(comm, S.diag.commutator);
  }
  r.check(comm <= 1e-8, "commutator norms <= 1e-8 (relative)");

  double torus_err = 0;
  const std::vector<IntVector> support{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}};
  for (int trial = 0; trial < 10; ++trial) {
    ComplexVector t{random_complex(rng), random_complex(rng)};
    std::vector<LaurentPolynomial> sys;
    for (int i = 0; i < 2; ++i) {
      LaurentPolynomial f{2, {}};
      Complex v = 0;
      for (std::size_t j = 1; j < support.size(); ++j) {
        Complex c = random_complex(rng);
        f.terms.push_back({support[j], c});
        v += c * monomial_value(support[j], t);
      }
      f.terms.push_back({support[0], -v});
      sys.push_back(f);
    }
    auto S = solve(sys);
    double best = std::numeric_limits<double>::infinity();
    for (auto& s : S.solutions)
      if (s.t) best = std::min(best, std::max(std::abs((*s.t)[0] / t[0] - 1.0), std::abs((*s.t)[1] / t[1] - 1.0)));
    torus_err = std::max(torus_err, best);
  }
  double boundary_err = 0;
  {
    Fan fan = normal_fan(Polytope::from_points({{0, 0}, {1, 0}, {0, 1}}));
    ClassGroup cl(fan);
    auto a = cl.from_coordinates({2});
    auto B = make_basis(fan, a);
    for (int trial = 0; trial < 9; ++trial) {
      std::size_t j = static_cast<std::size_t>(trial % 3);
      ComplexVector z{random_complex(rng), random_complex(rng), random_complex(rng)};
      z[j] = 0;
      HomogeneousSystem H{fan, cl, {}, {a, a}, {}, {}};
      for (int i = 0; i < 2; ++i) {
        CoxPolynomial f{B, ComplexVector(B->size())};
        for (auto& c : f.coeffs) c = random_complex(rng);
        for (std::size_t k = 0; k < B->size(); ++k)
          if (B->monomials[k][j] == 0) {
            f.coeffs[k] -= evaluate(f, z).value / monomial_value(B->monomials[k], z);
            break;
          }
        H.polys.push_back(f);
      }
      SolveOptions opt;
      opt.pair = std::make_pair(cl.from_coordinates({3}), cl.from_coordinates({1}));
      auto S = solve(H, opt);
      double best = std::numeric_limits<double>::infinity();
      for (auto& s : S.solutions) {
        if (s.zero_pattern != RaySet{j}) continue;
        std::size_t k = (j + 1) % 3, l = (j + 2) % 3;
        best = std::min(best, std::abs(s.z[l] / s.z[k] - z[l] / z[k]) / std::max(1.0, std::abs(z[l] / z[k])));
      }
      boundary_err = std::max(boundary_err, best);
    }
  }
  r.check(torus_err <= 1e-10 && boundary_err <= 1e-10, "planted torus and boundary roots recovered to 1e-10");

  bool same = true;
  for (auto name : {"double_pillow.json", "lines27.json"}) {
    io::RunOptions opt;
    opt.seed = 42;
    auto sf = io::load_system(data(name));
    auto a = io::to_solution_file(io::cmd_solve(sf, opt)), b = io::to_solution_file(io::cmd_solve(sf, opt));
    a.timings_ms.clear();
    b.timings_ms.clear();
    same = same && io::dump_solution(a) == io::dump_solution(b);
  }
  r.check(same, "identical SolutionFiles for equal seeds");
  r.note("BKK " + std::to_string(bkk_ok) + "/50, commutator " + fmt("%.1e", comm) + ", planted errors " +
         fmt("%.1e", torus_err) + " / " + fmt("%.1e", boundary_err));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria runner"};
  std::vector<int> expect_fail;
  app.add_option("--expect-fail", expect_fail, "criteria expected to fail")->delimiter(',');
  app.add_option("--data", data_dir, "directory with the system files")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<void(Report&)>>> criteria{
      {"27 lines: pairs, shapes, 27 torus + 3 boundary solutions", criterion1},
      {"intro sweep e = 0..14: counts, residuals, norm at e = 8", criterion2},
      {"epsilon = 1 exact roots", criterion3},
      {"corank check rejects [2D3], accepts [D3]", criterion4},
      {"double pillow: orbits, multiplicities, fixed-basis matrices", criterion5},
      {"plane degrees (2,3): Macaulay pair and 6 solutions", criterion6},
      {"property suites", criterion7},
  };
  std::set<int> failing;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Report r;
    try {
      criteria[i].second(r);
    } catch (const std::exception& e) {
      r.failed.push_back(std::string("exception: ") + e.what());
    }
    int id = static_cast<int>(i + 1);
    if (!r.failed.empty()) failing.insert(id);
    std::printf("%s criterion %d: %s\n", r.failed.empty() ? "PASS" : "FAIL", id, criteria[i].first.c_str());
    for (auto& f : r.failed) std::printf("    failed: %s\n", f.c_str());
    for (auto& n : r.info) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::set<int> expected(expect_fail.begin(), expect_fail.end());
  if (failing != expected) {
    std::printf("unexpected outcome: %zu criteria failed, %zu expected to fail\n", failing.size(), expected.size());
    return 1;
  }
  return 0;
}
