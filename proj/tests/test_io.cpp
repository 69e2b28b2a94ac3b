#include "common.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace toric;
using namespace testutil;

namespace {

namespace fs = std::filesystem;

io::SolutionFile solve_file(const std::string& name, std::uint64_t seed) {
  io::RunOptions opt;
  opt.seed = seed;
  auto f = io::to_solution_file(io::cmd_solve(io::load_system(data_path(name)), opt));
  f.timings_ms.clear();
  return f;
}

template <class F>
Stage parse_stage(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.stage();
  }
  return Stage::Internal;
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "toric_io_test";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

int run_cli(const std::string& args) {
  std::string cmd = std::string(TORIC_SOLVE_BIN) + " " + args + " > " + scratch("stdout.txt").string() + " 2> " +
                    scratch("stderr.txt").string();
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) { return io::read_text(p.string()); }

}  // namespace


TEST(Expr, Arithmetic) {
  std::map<std::string, double> v{{"e", 3}, {"a_1", 2}};
  EXPECT_DOUBLE_EQ(io::evaluate_expression("5 - 2*10^(-e)", v), 5 - 2e-3);
  EXPECT_DOUBLE_EQ(io::evaluate_expression("-2^2", v), -4);
  EXPECT_DOUBLE_EQ(io::evaluate_expression("2^3^2", v), 512);
  EXPECT_DOUBLE_EQ(io::evaluate_expression("(1 + a_1) / 4 * sqrt(16)", v), 3);
  EXPECT_DOUBLE_EQ(io::evaluate_expression("2e-3 + 1.5E2", v), 150.002);
  EXPECT_DOUBLE_EQ(io::evaluate_expression("exp(log(7))", v), 7);
  EXPECT_EQ(io::Expr::identifiers("2e-3*e + sqrt(a_1) - 1E4"), (std::set<std::string>{"e", "a_1"}));
  EXPECT_THROW(io::evaluate_expression("1 +", v), io::ExprError);
  EXPECT_THROW(io::evaluate_expression("x * 2", v), io::ExprError);
  EXPECT_THROW(io::evaluate_expression("(1 + 2", v), io::ExprError);
}

TEST(SystemFile, ParseErrorsAreParseStage) {
  const std::vector<std::string> bad{
      "{ \"format_version\": 1, ",
      R"({"variables": ["t"], "equations": [[{"exponent": [1], "coeff": 1}]]})",
      R"({"format_version": 2, "variables": ["t"], "equations": [[{"exponent": [1], "coeff": 1}]]})",
      R"({"format_version": 1, "variables": [], "equations": [[{"exponent": [], "coeff": 1}]]})",
      R"({"format_version": 1, "variables": ["t"], "equations": []})",
      R"({"format_version": 1, "variables": ["t"], "equations": [[]]})",
      R"({"format_version": 1, "variables": ["t"], "equations": [[{"exponent": [1, 2], "coeff": 1}]]})",
      R"({"format_version": 1, "variables": ["t"], "equations": [[{"exponent": [1], "coeff": "2*q"}]]})",
      R"({"format_version": 1, "variables": ["t"], "equations": [[{"exponent": [1.5], "coeff": 1}]]})",
      R"({"format_version": 1, "variables": ["t"], "equations": [[{"exponent": [1], "coeff": [1, 2, 3]}]]})",
      R"({"format_version": 1, "variables": ["t"], "equations": [[{"exponent": [1], "coeff": 1}]], "fan": {"rays": [[1, 0]]}})",
      R"({"format_version": 1, "variables": ["t"], "equations": [[{"exponent": [1], "coeff": 1}]], "pair": {"alpha": [1]}})",
  };
  for (auto& text : bad) EXPECT_EQ(parse_stage([&] { io::parse_system_text(text); }), Stage::Parse) << text;
}

TEST(SystemFile, ErrorsCarryLocation) {
  try {
    io::parse_system_text("{\n  \"format_version\": 1,\n  \"variables\": [\"t\" \"u\"]\n}", "sys.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  try {
    io::parse_system_text(R"({"format_version": 1, "variables": ["t"], "equations": []})", "sys.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("at least one equation"), std::string::npos) << e.what();
  }
}

TEST(SystemFile, RoundTrip) {
  for (auto name : {"intro_template.json", "lines27.json", "double_pillow.json", "plane_2_3.json"}) {
    auto sf = io::load_system(data_path(name));
    auto again = io::parse_system(io::system_json(sf));
    EXPECT_EQ(again.variables, sf.variables);
    EXPECT_EQ(again.parameters, sf.parameters);
    auto a = sf.instantiate(), b = again.instantiate();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].normalized(), b[i].normalized());
    EXPECT_EQ(io::system_json(again).dump(), io::system_json(sf).dump());
  }
}

TEST(SystemFile, TemplateInstantiation) {
  auto sf = io::load_system(data_path("intro_template.json"));
  ASSERT_TRUE(sf.uses_parameter("e"));
  auto sys = sf.instantiate({{"e", 2}});
  auto want = intro_system(1e-2);
  for (std::size_t i = 0; i < 2; ++i) {
    auto a = sys[i].normalized(), b = want[i].normalized();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_EQ(a[k].first, b[k].first);
      EXPECT_NEAR(std::abs(a[k].second - b[k].second), 0, 1e-15);
    }
  }
}

TEST(SystemFile, PairStrings) {
  EXPECT_EQ(io::parse_pair_string("4,4;1,1"), (std::pair<IntVector, IntVector>{{4, 4}, {1, 1}}));
  EXPECT_EQ(io::parse_pair_string(" 3 ; 1 "), (std::pair<IntVector, IntVector>{{3}, {1}}));
  EXPECT_EQ(parse_stage([] { io::parse_pair_string("4,4"); }), Stage::Parse);
  EXPECT_EQ(parse_stage([] { io::parse_pair_string("a;1"); }), Stage::Parse);

  auto H = pillow();
  for (auto rep : {IntVector{1, 0, 0, 0}, IntVector{0, 0, 1, 0}, IntVector{2, 3, 1, 1}}) {
    auto d = H.cl.divisor(rep);
    EXPECT_EQ(io::class_from_coordinates(H.cl, io::class_coordinates(d), "alpha"), d);
  }
  EXPECT_EQ(parse_stage([&] { io::class_from_coordinates(H.cl, {1, 1}, "alpha"); }), Stage::Parse);
}

TEST(SolutionFile, RoundTrip) {
  auto f = solve_file("double_pillow.json", 3);
  f.timings_ms = {{"pair", 1.25}};
  f.solutions[0].residuals.push_back(std::numeric_limits<double>::infinity());
  auto text = io::dump_solution(f);
  auto back = io::parse_solution_text(text);
  EXPECT_EQ(back, f);
  EXPECT_EQ(io::dump_solution(back), text);
  EXPECT_EQ(parse_stage([] { io::parse_solution_text("{\"format_version\": 1}"); }), Stage::Parse);
}

TEST(SolutionFile, SameSeedIdenticalFiles) {
  for (auto name : {"double_pillow.json", "hirzebruch.json", "plane_2_3.json", "lines27.json"}) {
    auto a = solve_file(name, 11), b = solve_file(name, 11);
    EXPECT_EQ(a, b) << name;
    EXPECT_EQ(io::dump_solution(a), io::dump_solution(b)) << name;
  }
}

TEST(SolutionFile, Csv) {
  auto f = solve_file("hirzebruch.json", 0);
  auto csv = io::solutions_csv(f);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "index,multiplicity,on_torus,zero_pattern,max_residual,re_x1,im_x1,re_x2,im_x2,re_x3,"
                                           "im_x3,re_x4,im_x4");
}

TEST(Sweep, Grid) {
  EXPECT_EQ(io::parse_grid("0:14:0.5").size(), 29u);
  EXPECT_EQ(io::parse_grid("0:14:0.5").back(), 14);
  EXPECT_EQ(io::parse_grid("1,2.5,8"), (std::vector<double>{1, 2.5, 8}));
  EXPECT_EQ(io::parse_grid("3:3:1"), std::vector<double>{3});
  for (auto bad : {"0:1", "0:1:0", "2:1:1", "x", "1,,2"}) EXPECT_EQ(parse_stage([&] { io::parse_grid(bad); }), Stage::Parse) << bad;
}

TEST(Sweep, SinglePointMatchesSolve) {
  auto sf = io::load_system(data_path("intro_template.json"));
  auto rows = io::cmd_sweep(sf, "e", {1}, {});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].status, "ok");
  EXPECT_EQ(rows[0].delta_plus, 3u);
  auto S = solve(intro_system(0.1));
  EXPECT_NEAR(rows[0].max_res, S.max_residual(), 1e-15);
  double nrm = 0;
  for (auto& s : S.solutions) nrm = std::max(nrm, std::hypot(std::abs((*s.t)[0]), std::abs((*s.t)[1])));
  EXPECT_NEAR(rows[0].max_norm, nrm, 1e-12 * nrm);
}

TEST(Sweep, FullGrid) {
  auto sf = io::load_system(data_path("intro_template.json"));
  std::vector<double> seen;
  auto rows = io::cmd_sweep(sf, "e", io::parse_grid("0:14:0.5"), {}, [&](const io::SweepRow& r) { seen.push_back(r.value); });
  ASSERT_EQ(rows.size(), 29u);
  EXPECT_EQ(seen, io::parse_grid("0:14:0.5"));
  for (auto& r : rows) {
    EXPECT_EQ(r.status, "ok") << r.value;
    EXPECT_EQ(r.num_solutions, 3u) << r.value;
    EXPECT_EQ(r.delta_plus, 3u) << r.value;
    EXPECT_LE(r.max_res, 1e-12) << r.value;
    EXPECT_LE(r.min_res, r.mean_res);
    EXPECT_LE(r.mean_res, r.max_res);
  }
  EXPECT_NEAR(rows[16].max_norm / 1.4142e8, 1, 0.01);
  auto line = io::sweep_csv_row(rows[16]);
  EXPECT_EQ(line.substr(0, 2), "8,");
  EXPECT_EQ(std::string(io::sweep_csv_header()), "e,max_res,mean_res,min_res,max_norm,delta_plus,status,wall_ms");
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
}

TEST(Sweep, MissingParameter) {
  auto sf = io::load_system(data_path("hirzebruch.json"));
  try {
    io::cmd_sweep(sf, "e", {1}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.stage(), Stage::Parse);
    EXPECT_NE(std::string(e.what()).find("parameter not found"), std::string::npos);
  }
  auto tmpl = io::load_system(data_path("intro_template.json"));
  EXPECT_EQ(parse_stage([&] { io::cmd_sweep(tmpl, "f", {1}, {}); }), Stage::Parse);
}

TEST(Regpair, ShapesMatchAssembledRes) {
  for (auto name : {"lines27.json", "plane_2_3.json", "double_pillow.json", "hirzebruch.json", "single_equation.json"}) {
    auto sf = io::load_system(data_path(name));
    auto sys = io::build_system(sf);
    auto rep = io::cmd_regpair(sf, {});
    ASSERT_FALSE(rep.rows.empty()) << name;
    for (auto& row : rep.rows) {
      auto R = assemble_res(sys, row.pair.alpha + row.pair.alpha0);
      EXPECT_EQ(row.shape, (std::pair<std::size_t, std::size_t>{R.num_rows(), R.num_cols()})) << name << " " << row.label;
    }
  }
}

TEST(Regpair, Report) {
  auto rep = io::cmd_regpair(io::load_system(data_path("lines27.json")), {});
  ASSERT_NE(rep.find("default"), nullptr);
  ASSERT_NE(rep.find("improved"), nullptr);
  EXPECT_EQ(rep.find("default")->shape, (std::pair<std::size_t, std::size_t>{1296, 2256}));
  EXPECT_EQ(rep.find("improved")->shape, (std::pair<std::size_t, std::size_t>{441, 552}));
  EXPECT_TRUE(rep.find("improved")->pair.verified);
  EXPECT_EQ(rep.class_group, "Z^2");
  auto text = io::format_regpair(rep);
  EXPECT_NE(text.find("shape=441x552"), std::string::npos);
  EXPECT_NE(text.find("provenance=Multihomogeneous"), std::string::npos);

  io::RunOptions opt;
  opt.pair = "5,5;1,1";
  auto sup = io::cmd_regpair(io::load_system(data_path("lines27.json")), opt);
  ASSERT_NE(sup.find("supplied"), nullptr);
  EXPECT_EQ(sup.find("supplied")->shape, (std::pair<std::size_t, std::size_t>{784, 1190}));
  EXPECT_TRUE(sup.find("supplied")->pair.verified);
}

TEST(Regpair, SingleEquation) {
  auto sf = io::load_system(data_path("single_equation.json"));
  auto sys = io::build_system(sf);
  auto rep = io::cmd_regpair(sf, {});
  ASSERT_NE(rep.find("default"), nullptr);
  EXPECT_EQ(rep.find("default")->pair.alpha, sys.degrees[0]);
  EXPECT_EQ(rep.find("default")->pair.alpha0, sys.degrees[0]);
  // the Macaulay bound d - n = 0 is smaller still
  ASSERT_NE(rep.find("improved"), nullptr);
  EXPECT_TRUE(rep.find("improved")->pair.alpha.is_zero());
  EXPECT_TRUE(rep.find("improved")->pair.verified);
  auto S = io::cmd_solve(sf, {});
  ASSERT_EQ(S.solutions.size(), 1u);
  ASSERT_TRUE(S.solutions[0].t.has_value());
  EXPECT_NEAR(std::abs((*S.solutions[0].t)[0] - Complex(2)), 0, 1e-12);
}

TEST(Cli, ExitCodesAndOutputs) {
  auto out = scratch("pillow_out.json"), csv = scratch("pillow.csv");
  ASSERT_EQ(run_cli("solve " + data_path("double_pillow.json") + " -o " + out.string() + " --emit-csv " + csv.string()), 0);
  auto f = io::parse_solution_text(slurp(out));
  EXPECT_EQ(f.delta_plus, 4u);
  EXPECT_EQ(f.solutions.size(), 2u);
  EXPECT_EQ(slurp(csv), io::solutions_csv(f));

  EXPECT_EQ(run_cli("regpair " + data_path("lines27.json")), 0);
  EXPECT_NE(slurp(scratch("stdout.txt")).find("shape=441x552"), std::string::npos);

  auto bad = scratch("bad.json");
  write(bad, "{\n  \"format_version\": 1,\n  \"variables\": [\"t\",]\n}\n");
  EXPECT_EQ(run_cli("solve " + bad.string()), 2);
  EXPECT_NE(slurp(scratch("stderr.txt")).find("line 3"), std::string::npos);

  auto empty = scratch("empty.json");
  write(empty, R"({"format_version": 1, "variables": ["t"], "equations": []})");
  EXPECT_EQ(run_cli("solve " + empty.string()), 2);
  EXPECT_EQ(run_cli("solve " + scratch("missing.json").string()), 2);
  EXPECT_EQ(run_cli("solve " + data_path("hirzebruch.json") + " --no-such-flag"), 2);
  EXPECT_EQ(run_cli("sweep " + data_path("hirzebruch.json") + " --param e --grid 0:1:1"), 2);
  EXPECT_NE(slurp(scratch("stderr.txt")).find("parameter not found"), std::string::npos);

  auto H = homogenize(intro_system(1));
  auto coords = [](const IntVector& v) {
    std::string s;
    for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
  };
  std::string pair = coords(io::class_coordinates(H.cl.divisor({0, 0, 2, 4}))) + ";" +
                     coords(io::class_coordinates(H.cl.divisor({0, 0, 2, 0})));
  EXPECT_EQ(run_cli("solve " + data_path("hirzebruch.json") + " --pair '" + pair + "'"), 3);
  EXPECT_NE(slurp(scratch("stderr.txt")).find("failed verification"), std::string::npos);
  // unverified, the same pair breaks down when h0 is inverted
  EXPECT_EQ(run_cli("solve " + data_path("hirzebruch.json") + " --pair '" + pair + "' --no-verify"), 3);
  EXPECT_NE(slurp(scratch("stderr.txt")).find("ill-conditioned"), std::string::npos);
  EXPECT_EQ(run_cli("solve " + data_path("hirzebruch.json") + " --pair '1,1;1,1' --no-verify -o " + out.string()), 0);
  EXPECT_EQ(io::parse_solution_text(slurp(out)).pair.provenance, "UserSupplied");
}

TEST(Cli, SweepCsv) {
  auto csv = scratch("sweep.csv");
  ASSERT_EQ(run_cli("sweep " + data_path("intro_template.json") + " --param e --grid 0:2:1 --emit-csv " + csv.string()), 0);
  auto text = slurp(csv);
  EXPECT_EQ(text.substr(0, text.find('\n')), io::sweep_csv_header());
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
}
