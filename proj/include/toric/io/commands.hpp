#pragma once

#include "toric/io/solution_file.hpp"

#include <cstdio>
#include <functional>

namespace toric::io {

struct RunOptions {
  std::uint64_t seed = 0;
  Tolerances tol;
  /// "alpha;alpha0" in class group coordinates; overrides the file's pair.
  std::optional<std::string> pair;
  bool verify = true;
  /// JSON file with {"rays": ..., "cones": ...} replacing the normal fan.
  std::optional<std::string> fan_path;
};

inline std::optional<FanSpec> load_fan_override(const RunOptions& opt) {
  if (!opt.fan_path) return std::nullopt;
  json j = parse_json_text(read_text(*opt.fan_path), *opt.fan_path);
  try {
    return parse_fan_spec(j);
  } catch (const Error& e) {
    throw Error(Stage::Parse, *opt.fan_path + ": " + e.what());
  }
}

/// Pair from --pair, else from the file, else none.
inline std::optional<std::pair<DivisorClass, DivisorClass>> resolve_pair(const SystemFile& sf,
                                                                         const HomogeneousSystem& sys,
                                                                         const RunOptions& opt) {
  std::optional<std::pair<IntVector, IntVector>> coords = sf.pair;
  if (opt.pair) coords = parse_pair_string(*opt.pair);
  if (!coords) return std::nullopt;
  return std::make_pair(class_from_coordinates(sys.cl, coords->first, "alpha"),
                        class_from_coordinates(sys.cl, coords->second, "alpha0"));
}

inline SolveOptions solve_options(const SystemFile& sf, const HomogeneousSystem& sys, const RunOptions& opt) {
  SolveOptions so;
  so.seed = opt.seed;
  so.tol = opt.tol;
  so.verify = opt.verify;
  so.pair = resolve_pair(sf, sys, opt);
  return so;
}

inline SolutionSet cmd_solve(const SystemFile& sf, const RunOptions& opt, const std::map<std::string, double>& values = {}) {
  auto sys = build_system(sf, values, load_fan_override(opt));
  return solve(sys, solve_options(sf, sys, opt));
}

/// One row per solution: index, multiplicity, on_torus, zero pattern, max
/// residual, then re/im of every Cox coordinate.
inline std::string solutions_csv(const SolutionFile& f) {
  std::string out = "index,multiplicity,on_torus,zero_pattern,max_residual";
  const std::size_t k = f.solutions.empty() ? 0 : f.solutions[0].z.size();
  for (std::size_t i = 0; i < k; ++i) out += ",re_x" + std::to_string(i + 1) + ",im_x" + std::to_string(i + 1);
  out += "\n";
  char buf[64];
  for (std::size_t s = 0; s < f.solutions.size(); ++s) {
    const auto& r = f.solutions[s];
    std::string zp;
    for (auto j : r.zero_pattern) zp += (zp.empty() ? "" : " ") + std::string("x") + std::to_string(j + 1);
    double mr = 0;
    for (auto x : r.residuals) mr = std::max(mr, x);
    std::snprintf(buf, sizeof buf, "%.6e", mr);
    out += std::to_string(s) + "," + std::to_string(r.multiplicity) + "," + (r.on_torus ? "1" : "0") + "," + zp + "," + buf;
    for (auto& z : r.z) {
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g", z.real(), z.imag());
      out += buf;
    }
    out += "\n";
  }
  return out;
}

struct RegpairRow {
  std::string label;
  RegularityPair pair;
  std::pair<std::size_t, std::size_t> shape;
};

struct RegpairReport {
  std::size_t num_variables = 0, num_rays = 0, num_equations = 0;
  std::string class_group;
  std::vector<std::string> degrees;
  std::vector<RegpairRow> rows;
  std::vector<std::string> notes;

  const RegpairRow* find(const std::string& label) const {
    for (auto& r : rows)
      if (r.label == label) return &r;
    return nullptr;
  }
};

inline std::string class_group_name(const ClassGroup& cl) {
  std::string s = "Z^" + std::to_string(cl.rank());
  for (auto m : cl.torsion()) s += " + Z/" + std::to_string(m);
  return s;
}

/// Default and improved pairs with the Res shape at alpha + alpha0. With
/// verify, the improved (or supplied) pair also gets its corank check.
inline RegpairReport regpair_report(const HomogeneousSystem& sys,
                                    const std::optional<std::pair<DivisorClass, DivisorClass>>& user, bool verify,
                                    const Tolerances& tol = {}) {
  RegpairReport rep;
  rep.num_variables = sys.fan.n;
  rep.num_rays = sys.fan.num_rays();
  rep.num_equations = sys.size();
  rep.class_group = class_group_name(sys.cl);
  for (auto& d : sys.degrees) rep.degrees.push_back(d.str());

  auto add_row = [&](std::string label, RegularityPair p, bool check) {
    if (check) p = verify_pair(sys, p, tol);
    auto shape = res_shape(sys, p.alpha + p.alpha0);
    rep.rows.push_back({std::move(label), std::move(p), shape});
  };
  if (user) {
    RegularityPair p;
    p.alpha = user->first;
    p.alpha0 = user->second;
    p.provenance = Provenance::UserSupplied;
    add_row("supplied", p, verify);
  }
  try {
    add_row("default", default_pair(sys), false);
    add_row("improved", improved_pair(sys), verify && !user);
  } catch (const Error& e) {
    if (!user || e.stage() != Stage::Pair) throw;
    rep.notes.push_back(e.what());
  }
  return rep;
}

inline std::string format_regpair(const RegpairReport& r) {
  std::string out = "variables " + std::to_string(r.num_variables) + ", rays " + std::to_string(r.num_rays) +
                    ", equations " + std::to_string(r.num_equations) + ", class group " + r.class_group + "\n";
  out += "degrees";
  for (auto& d : r.degrees) out += " " + d;
  out += "\n";
  for (auto& row : r.rows) {
    const auto& p = row.pair;
    char label[16];
    std::snprintf(label, sizeof label, "%-9s", row.label.c_str());
    out += std::string(label) + " alpha=" + p.alpha.str() + " alpha0=" + p.alpha0.str() +
           " provenance=" + provenance_name(p.provenance) + " shape=" + std::to_string(row.shape.first) + "x" +
           std::to_string(row.shape.second);
    if (p.corank_alpha)
      out += std::string(" verified=") + (p.verified ? "yes" : "no") + " corank=" + std::to_string(*p.corank_alpha) +
             "/" + std::to_string(*p.corank_sum);
    if (p.requires_bpf_check) out += " bpf-check-at-solutions";
    out += "\n";
  }
  for (auto& n : r.notes) out += "note: " + n + "\n";
  return out;
}

inline RegpairReport cmd_regpair(const SystemFile& sf, const RunOptions& opt) {
  auto sys = build_system(sf, {}, load_fan_override(opt));
  return regpair_report(sys, resolve_pair(sf, sys, opt), opt.verify, opt.tol);
}

struct SweepRow {
  double value = 0;
  double max_res = 0, mean_res = 0, min_res = 0;
  /// largest Euclidean norm of the torus coordinates; NaN without torus points
  double max_norm = std::numeric_limits<double>::quiet_NaN();
  std::size_t delta_plus = 0;
  std::size_t num_solutions = 0;
  std::string status = "ok";
  double wall_ms = 0;
};

inline const char* sweep_csv_header() { return "e,max_res,mean_res,min_res,max_norm,delta_plus,status,wall_ms"; }

inline std::string sweep_csv_row(const SweepRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.10g,%.6e,%.6e,%.6e,%.10e,%zu,%s,%.3f", r.value, r.max_res, r.mean_res, r.min_res,
                r.max_norm, r.delta_plus, r.status.c_str(), r.wall_ms);
  return buf;
}

/// "a:b:step" (inclusive) or a comma-separated list.
inline std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  auto num = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (s.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw Error(Stage::Parse, "--grid: bad number '" + s + "'");
    }
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() != 3) throw Error(Stage::Parse, "--grid: expected start:stop:step");
    double a = num(parts[0]), b = num(parts[1]), h = num(parts[2]);
    if (!(h > 0) || b < a) throw Error(Stage::Parse, "--grid: need step > 0 and stop >= start");
    auto count = static_cast<std::size_t>(std::floor((b - a) / h + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(a + static_cast<double>(i) * h);
    return out;
  }
  std::stringstream ss(text);
  std::string p;
  while (std::getline(ss, p, ',')) out.push_back(num(p));
  if (out.empty()) throw Error(Stage::Parse, "--grid: empty");
  return out;
}

/// Solves the template once per grid value. Failures become rows whose status
/// names the failing stage; `on_row` sees rows in grid order as they finish.
inline std::vector<SweepRow> cmd_sweep(const SystemFile& sf, const std::string& param, const std::vector<double>& grid,
                                       const RunOptions& opt, const std::function<void(const SweepRow&)>& on_row = {}) {
  if (!sf.parameters.count(param) || !sf.uses_parameter(param))
    throw Error(Stage::Parse, "parameter not found: '" + param + "'");
  auto fan = load_fan_override(opt);
  std::vector<SweepRow> rows;
  for (double v : grid) {
    SweepRow row;
    row.value = v;
    toric::detail::Stopwatch sw;
    try {
      auto sys = build_system(sf, {{param, v}}, fan);
      auto S = solve(sys, solve_options(sf, sys, opt));
      row.delta_plus = S.delta_plus;
      row.num_solutions = S.solutions.size();
      std::vector<double> res;
      for (auto& s : S.solutions) {
        res.push_back(max_residual(s.residuals));
        if (s.t) {
          double nrm = 0;
          for (auto& x : *s.t) nrm += std::norm(x);
          nrm = std::sqrt(nrm);
          if (std::isnan(row.max_norm) || nrm > row.max_norm) row.max_norm = nrm;
        }
      }
      if (!res.empty()) {
        row.max_res = *std::max_element(res.begin(), res.end());
        row.min_res = *std::min_element(res.begin(), res.end());
        double sum = 0;
        for (auto x : res) sum += x;
        row.mean_res = sum / static_cast<double>(res.size());
      }
    } catch (const Error& e) {
      row.status = stage_name(e.stage());
      row.max_res = row.mean_res = row.min_res = std::numeric_limits<double>::quiet_NaN();
    } catch (const std::exception&) {
      row.status = "internal";
      row.max_res = row.mean_res = row.min_res = std::numeric_limits<double>::quiet_NaN();
    }
    row.wall_ms = sw.lap();
    if (on_row) on_row(row);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace toric::io
