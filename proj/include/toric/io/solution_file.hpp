#pragma once

#include "toric/coords/solve.hpp"
#include "toric/io/system_file.hpp"

namespace toric::io {

struct SolutionRecord {
  ComplexVector z;
  std::size_t multiplicity = 1;
  std::vector<std::size_t> zero_pattern;
  std::vector<double> residuals;
  bool on_torus = false;
  std::optional<ComplexVector> t;

  friend bool operator==(const SolutionRecord&, const SolutionRecord&) = default;
};

struct PairRecord {
  IntVector alpha, alpha0;
  std::string provenance;
  bool verified = false;
  std::optional<std::size_t> corank_alpha, corank_sum;

  friend bool operator==(const PairRecord&, const PairRecord&) = default;
};

/// Serialized form of a SolutionSet (format_version 1).
struct SolutionFile {
  std::uint64_t seed = 0;
  PairRecord pair;
  std::map<std::string, double> tolerances;
  std::size_t delta = 0, delta_plus = 0;
  std::pair<std::size_t, std::size_t> res_shape{0, 0};
  std::map<std::string, double> timings_ms;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> notes;
  std::vector<SolutionRecord> solutions;

  friend bool operator==(const SolutionFile&, const SolutionFile&) = default;
};

inline std::map<std::string, double> tolerance_map(const Tolerances& t) {
  return {{"tol_rank", t.tol_rank},       {"gap_ratio", t.gap_ratio},       {"cond_max", t.cond_max},
          {"retries_max", t.retries_max}, {"cluster_gap", t.cluster_gap},   {"leak_tol", t.leak_tol},
          {"zero_tol", t.zero_tol},       {"ratio_tol", t.ratio_tol},       {"bpf_tol", t.bpf_tol},
          {"torus_margin", t.torus_margin}};
}

inline SolutionFile to_solution_file(const SolutionSet& S) {
  SolutionFile f;
  f.seed = S.seed;
  f.pair.alpha = class_coordinates(S.pair.alpha);
  f.pair.alpha0 = class_coordinates(S.pair.alpha0);
  f.pair.provenance = provenance_name(S.pair.provenance);
  f.pair.verified = S.pair.verified;
  f.pair.corank_alpha = S.pair.corank_alpha;
  f.pair.corank_sum = S.pair.corank_sum;
  f.tolerances = tolerance_map(S.tol);
  f.delta = S.delta;
  f.delta_plus = S.delta_plus;
  f.res_shape = S.diag.res_shape;
  f.timings_ms = S.diag.timings_ms;
  f.diagnostics = {{"rank_gap", S.diag.rank_gap},     {"condition", S.diag.condition},
                   {"h0_attempts", S.diag.h0_attempts}, {"leakage", S.diag.leakage},
                   {"cluster_gap", S.diag.cluster_gap}, {"commutator", S.diag.commutator},
                   {"max_residual", S.max_residual()}};
  if (S.diag.bpf_ok) f.diagnostics["bpf_ok"] = *S.diag.bpf_ok ? 1.0 : 0.0;
  f.notes = S.diag.notes;
  for (auto& n : S.pair.notes) f.notes.push_back(n);
  for (auto& s : S.solutions)
    f.solutions.push_back({s.z, s.multiplicity, s.zero_pattern, s.residuals, s.on_torus, s.t});
  return f;
}

namespace detail {

// JSON has no infinities; they travel as null.
inline json real_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline double real_from(const json& j, const std::string& where) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) bad(where, "expected a number");
  return j.get<double>();
}

inline json complex_vector_json(const ComplexVector& v) {
  json a = json::array();
  for (auto& x : v) a.push_back({x.real(), x.imag()});
  return a;
}

inline ComplexVector complex_vector_from(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of [re, im]");
  ComplexVector v;
  for (auto& x : j) {
    if (!x.is_array() || x.size() != 2 || !x[0].is_number() || !x[1].is_number()) bad(where, "expected [re, im]");
    v.emplace_back(x[0].get<double>(), x[1].get<double>());
  }
  return v;
}

inline json real_map_json(const std::map<std::string, double>& m) {
  json j = json::object();
  for (auto& [k, v] : m) j[k] = real_json(v);
  return j;
}

inline std::map<std::string, double> real_map_from(const json& j, const std::string& where) {
  std::map<std::string, double> m;
  if (!j.is_object()) bad(where, "expected an object");
  for (auto& [k, v] : j.items()) m[k] = real_from(v, where + "." + k);
  return m;
}

}  // namespace detail

inline json solution_json(const SolutionFile& f) {
  json meta;
  meta["seed"] = f.seed;
  json pair = {{"alpha", f.pair.alpha}, {"alpha0", f.pair.alpha0}, {"provenance", f.pair.provenance},
               {"verified", f.pair.verified}};
  if (f.pair.corank_alpha) pair["corank_alpha"] = *f.pair.corank_alpha;
  if (f.pair.corank_sum) pair["corank_sum"] = *f.pair.corank_sum;
  meta["pair"] = pair;
  meta["tolerances"] = detail::real_map_json(f.tolerances);
  meta["delta"] = f.delta;
  meta["delta_plus"] = f.delta_plus;
  meta["res_shape"] = {f.res_shape.first, f.res_shape.second};
  meta["diagnostics"] = detail::real_map_json(f.diagnostics);
  meta["notes"] = f.notes;
  meta["timings_ms"] = detail::real_map_json(f.timings_ms);

  json sols = json::array();
  for (auto& s : f.solutions) {
    json js;
    js["z"] = detail::complex_vector_json(s.z);
    js["multiplicity"] = s.multiplicity;
    js["zero_pattern"] = s.zero_pattern;
    js["residuals"] = s.residuals;
    js["on_torus"] = s.on_torus;
    if (s.t) js["t"] = detail::complex_vector_json(*s.t);
    sols.push_back(js);
  }
  return {{"format_version", 1}, {"metadata", meta}, {"solutions", sols}};
}

inline std::string dump_solution(const SolutionFile& f) { return solution_json(f).dump(2) + "\n"; }

inline SolutionFile parse_solution(const json& j) {
  using detail::bad;
  if (!j.is_object() || !j.contains("format_version") || j["format_version"] != 1)
    bad("top level", "expected a format_version 1 solution file");
  if (!j.contains("metadata") || !j.contains("solutions")) bad("top level", "missing metadata or solutions");
  const json& m = j["metadata"];
  SolutionFile f;
  f.seed = m.at("seed").get<std::uint64_t>();
  const json& p = m.at("pair");
  f.pair.alpha = detail::as_int_vector(p.at("alpha"), "pair.alpha");
  f.pair.alpha0 = detail::as_int_vector(p.at("alpha0"), "pair.alpha0");
  f.pair.provenance = p.at("provenance").get<std::string>();
  f.pair.verified = p.at("verified").get<bool>();
  if (p.contains("corank_alpha")) f.pair.corank_alpha = p["corank_alpha"].get<std::size_t>();
  if (p.contains("corank_sum")) f.pair.corank_sum = p["corank_sum"].get<std::size_t>();
  f.tolerances = detail::real_map_from(m.at("tolerances"), "tolerances");
  f.delta = m.at("delta").get<std::size_t>();
  f.delta_plus = m.at("delta_plus").get<std::size_t>();
  f.res_shape = {m.at("res_shape").at(0).get<std::size_t>(), m.at("res_shape").at(1).get<std::size_t>()};
  f.diagnostics = detail::real_map_from(m.at("diagnostics"), "diagnostics");
  f.notes = m.at("notes").get<std::vector<std::string>>();
  f.timings_ms = detail::real_map_from(m.at("timings_ms"), "timings_ms");
  for (std::size_t i = 0; i < j["solutions"].size(); ++i) {
    const json& s = j["solutions"][i];
    std::string w = "solutions[" + std::to_string(i) + "]";
    SolutionRecord r;
    r.z = detail::complex_vector_from(s.at("z"), w + ".z");
    r.multiplicity = s.at("multiplicity").get<std::size_t>();
    r.zero_pattern = s.at("zero_pattern").get<std::vector<std::size_t>>();
    for (auto& x : s.at("residuals")) r.residuals.push_back(detail::real_from(x, w + ".residuals"));
    r.on_torus = s.at("on_torus").get<bool>();
    if (s.contains("t")) r.t = detail::complex_vector_from(s["t"], w + ".t");
    f.solutions.push_back(std::move(r));
  }
  return f;
}

inline SolutionFile parse_solution_text(const std::string& text, const std::string& source = "solution") {
  json j = parse_json_text(text, source);
  try {
    return parse_solution(j);
  } catch (const json::exception& e) {
    throw Error(Stage::Parse, source + ": " + e.what());
  }
}

}  // namespace toric::io
