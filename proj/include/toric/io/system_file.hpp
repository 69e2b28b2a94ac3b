#pragma once

#include "toric/cox/homogenize.hpp"
#include "toric/error.hpp"
#include "toric/io/expr.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace toric::io {

using json = nlohmann::ordered_json;

/// A real number given either literally or as an expression in the parameters.
struct Scalar {
  double value = 0;
  std::string expr;  // empty for literals

  double eval(const std::map<std::string, double>& params) const {
    return expr.empty() ? value : evaluate_expression(expr, params);
  }
};

struct TermSpec {
  IntVector exponent;
  Scalar re, im;
};

struct FanSpec {
  std::vector<IntVector> rays;
  std::vector<RaySet> cones;  // empty: derive cones from the polytope
};

/// Parsed system file (format_version 1).
struct SystemFile {
  std::vector<std::string> variables;
  std::vector<std::vector<TermSpec>> equations;
  /// Named scalars usable in coefficient expressions, with default values.
  std::map<std::string, double> parameters;
  std::optional<FanSpec> fan;
  /// (alpha, alpha0) in class group coordinates: free part, then torsion.
  std::optional<std::pair<IntVector, IntVector>> pair;

  std::size_t n() const { return variables.size(); }

  /// Laurent system with parameters at their defaults, overridden by `values`.
  std::vector<LaurentPolynomial> instantiate(const std::map<std::string, double>& values = {}) const {
    auto params = parameters;
    for (auto& [k, v] : values) params[k] = v;
    std::vector<LaurentPolynomial> out;
    for (std::size_t i = 0; i < equations.size(); ++i) {
      LaurentPolynomial f{n(), {}};
      for (std::size_t j = 0; j < equations[i].size(); ++j) {
        const auto& t = equations[i][j];
        try {
          f.terms.push_back({t.exponent, Complex(t.re.eval(params), t.im.eval(params))});
        } catch (const ExprError& e) {
          throw Error(Stage::Parse, "equation " + std::to_string(i + 1) + ", term " + std::to_string(j + 1) + ": " + e.what());
        }
      }
      out.push_back(std::move(f));
    }
    return out;
  }

  /// True if some coefficient expression refers to `name`.
  bool uses_parameter(const std::string& name) const {
    for (auto& eq : equations)
      for (auto& t : eq)
        for (auto* s : {&t.re, &t.im})
          if (!s->expr.empty() && Expr::identifiers(s->expr).count(name)) return true;
    return false;
  }
};

namespace detail {

inline std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] inline void bad(const std::string& where, const std::string& msg) {
  throw Error(Stage::Parse, where + ": " + msg);
}

inline Int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<Int>();
}

inline IntVector as_int_vector(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of integers");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

inline Scalar as_scalar(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), {}};
  if (j.is_string()) return {0, j.get<std::string>()};
  bad(where, "expected a number or an expression string");
}

inline json scalar_json(const Scalar& s) {
  if (!s.expr.empty()) return s.expr;
  return s.value;
}

}  // namespace detail

inline FanSpec parse_fan_spec(const json& j, const std::string& where = "fan") {
  if (!j.is_object() || !j.contains("rays")) detail::bad(where, "expected an object with \"rays\"");
  FanSpec f;
  const json& rays = j["rays"];
  if (!rays.is_array() || rays.empty()) detail::bad(where + ".rays", "expected a nonempty array");
  for (std::size_t i = 0; i < rays.size(); ++i)
    f.rays.push_back(detail::as_int_vector(rays[i], where + ".rays[" + std::to_string(i) + "]"));
  if (j.contains("cones")) {
    const json& cones = j["cones"];
    if (!cones.is_array()) detail::bad(where + ".cones", "expected an array");
    for (std::size_t i = 0; i < cones.size(); ++i) {
      std::string w = where + ".cones[" + std::to_string(i) + "]";
      IntVector c = detail::as_int_vector(cones[i], w);
      RaySet rs;
      for (auto x : c) {
        if (x < 0 || static_cast<std::size_t>(x) >= f.rays.size()) detail::bad(w, "ray index out of range");
        rs.push_back(static_cast<std::size_t>(x));
      }
      std::sort(rs.begin(), rs.end());
      f.cones.push_back(rs);
    }
  }
  return f;
}

inline json fan_spec_json(const FanSpec& f) {
  json j;
  j["rays"] = json::array();
  for (auto& r : f.rays) j["rays"].push_back(r);
  if (!f.cones.empty()) {
    j["cones"] = json::array();
    for (auto& c : f.cones) j["cones"].push_back(c);
  }
  return j;
}

inline json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    auto p = msg.find("- ");
    if (p != std::string::npos) msg = msg.substr(p + 2);
    throw Error(Stage::Parse, source + ": " + detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + msg);
  }
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Stage::Parse, path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SystemFile parse_system(const json& j) {
  using detail::bad;
  if (!j.is_object()) bad("top level", "expected an object");
  if (!j.contains("format_version")) bad("top level", "missing \"format_version\"");
  if (detail::as_int(j["format_version"], "format_version") != 1) bad("format_version", "unsupported version");

  SystemFile s;
  if (!j.contains("variables") || !j["variables"].is_array() || j["variables"].empty())
    bad("variables", "expected a nonempty array of names");
  for (auto& v : j["variables"]) {
    if (!v.is_string()) bad("variables", "names must be strings");
    s.variables.push_back(v.get<std::string>());
  }
  const std::size_t n = s.variables.size();

  if (j.contains("parameters")) {
    if (!j["parameters"].is_object()) bad("parameters", "expected an object of name: value");
    for (auto& [k, v] : j["parameters"].items()) {
      if (!v.is_number()) bad("parameters." + k, "expected a number");
      s.parameters[k] = v.get<double>();
    }
  }

  if (!j.contains("equations") || !j["equations"].is_array()) bad("equations", "expected an array");
  if (j["equations"].empty()) bad("equations", "at least one equation is required");
  for (std::size_t i = 0; i < j["equations"].size(); ++i) {
    const json& eq = j["equations"][i];
    std::string we = "equation " + std::to_string(i + 1);
    const json* terms = &eq;
    if (eq.is_object()) {
      if (!eq.contains("terms")) bad(we, "missing \"terms\"");
      terms = &eq["terms"];
    }
    if (!terms->is_array()) bad(we, "expected an array of terms");
    if (terms->empty()) bad(we, "equation has no terms");
    std::vector<TermSpec> ts;
    for (std::size_t k = 0; k < terms->size(); ++k) {
      const json& t = (*terms)[k];
      std::string wt = we + ", term " + std::to_string(k + 1);
      if (!t.is_object() || !t.contains("exponent") || !t.contains("coeff"))
        bad(wt, "expected {\"exponent\": [...], \"coeff\": [re, im]}");
      TermSpec spec;
      spec.exponent = detail::as_int_vector(t["exponent"], wt + ", exponent");
      if (spec.exponent.size() != n)
        bad(wt, "exponent has length " + std::to_string(spec.exponent.size()) + ", expected " + std::to_string(n));
      const json& c = t["coeff"];
      if (c.is_array()) {
        if (c.size() != 2) bad(wt + ", coeff", "expected [re, im]");
        spec.re = detail::as_scalar(c[0], wt + ", coeff re");
        spec.im = detail::as_scalar(c[1], wt + ", coeff im");
      } else {
        spec.re = detail::as_scalar(c, wt + ", coeff");
      }
      for (auto* sc : {&spec.re, &spec.im})
        for (auto& id : Expr::identifiers(sc->expr))
          if (!s.parameters.count(id)) bad(wt, "unknown parameter '" + id + "'");
      ts.push_back(std::move(spec));
    }
    s.equations.push_back(std::move(ts));
  }

  if (j.contains("fan")) {
    s.fan = parse_fan_spec(j["fan"]);
    for (std::size_t i = 0; i < s.fan->rays.size(); ++i)
      if (s.fan->rays[i].size() != n) bad("fan.rays[" + std::to_string(i) + "]", "wrong length");
  }
  if (j.contains("pair")) {
    const json& p = j["pair"];
    if (!p.is_object() || !p.contains("alpha") || !p.contains("alpha0"))
      bad("pair", "expected {\"alpha\": [...], \"alpha0\": [...]}");
    s.pair = {detail::as_int_vector(p["alpha"], "pair.alpha"), detail::as_int_vector(p["alpha0"], "pair.alpha0")};
  }
  return s;
}

inline SystemFile parse_system_text(const std::string& text, const std::string& source = "input") {
  json j = parse_json_text(text, source);
  try {
    return parse_system(j);
  } catch (const Error& e) {
    throw Error(Stage::Parse, source + ": " + e.what());
  }
}

inline SystemFile load_system(const std::string& path) { return parse_system_text(read_text(path), path); }

inline json system_json(const SystemFile& s) {
  json j;
  j["format_version"] = 1;
  j["variables"] = s.variables;
  if (!s.parameters.empty()) {
    j["parameters"] = json::object();
    for (auto& [k, v] : s.parameters) j["parameters"][k] = v;
  }
  j["equations"] = json::array();
  for (auto& eq : s.equations) {
    json terms = json::array();
    for (auto& t : eq) terms.push_back({{"exponent", t.exponent}, {"coeff", {detail::scalar_json(t.re), detail::scalar_json(t.im)}}});
    j["equations"].push_back({{"terms", terms}});
  }
  if (s.fan) j["fan"] = fan_spec_json(*s.fan);
  if (s.pair) j["pair"] = {{"alpha", s.pair->first}, {"alpha0", s.pair->second}};
  return j;
}

/// System file for a concrete Laurent system.
inline SystemFile system_from_laurent(const std::vector<LaurentPolynomial>& sys, std::vector<std::string> names = {}) {
  SystemFile s;
  const std::size_t n = sys.at(0).n;
  if (names.empty())
    for (std::size_t i = 0; i < n; ++i) names.push_back("t" + std::to_string(i + 1));
  s.variables = std::move(names);
  for (auto& f : sys) {
    std::vector<TermSpec> ts;
    for (auto& [e, c] : f.terms) ts.push_back({e, {c.real(), {}}, {c.imag(), {}}});
    s.equations.push_back(std::move(ts));
  }
  return s;
}

/// Class from coordinates (free part, then torsion residues).
inline DivisorClass class_from_coordinates(const ClassGroup& cl, const IntVector& coords, const std::string& what) {
  const std::size_t r = cl.rank(), t = cl.torsion().size();
  if (coords.size() != r + t)
    throw Error(Stage::Parse, what + ": expected " + std::to_string(r + t) + " class group coordinates, got " +
                                  std::to_string(coords.size()));
  IntVector free(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(r));
  IntVector tors(coords.begin() + static_cast<std::ptrdiff_t>(r), coords.end());
  return cl.from_coordinates(free, tors);
}

inline IntVector class_coordinates(const DivisorClass& a) {
  IntVector v = a.deg.free;
  v.insert(v.end(), a.deg.torsion.begin(), a.deg.torsion.end());
  return v;
}

/// "4,4;1,1" -> ((4,4), (1,1)).
inline std::pair<IntVector, IntVector> parse_pair_string(const std::string& text) {
  auto semi = text.find(';');
  if (semi == std::string::npos) throw Error(Stage::Parse, "--pair: expected \"alpha;alpha0\"");
  auto vec = [&](std::string part) {
    IntVector v;
    for (char& c : part)
      if (c == '(' || c == ')' || c == '[' || c == ']') c = ' ';
    std::stringstream ss(part);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        long long x = std::stoll(tok, &used);
        if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
        v.push_back(x);
      } catch (const std::exception&) {
        throw Error(Stage::Parse, "--pair: bad integer '" + tok + "'");
      }
    }
    return v;
  };
  return {vec(text.substr(0, semi)), vec(text.substr(semi + 1))};
}

/// Homogeneous system on the toric variety of the file (or of `fan_override`).
inline HomogeneousSystem build_system(const SystemFile& s, const std::map<std::string, double>& values = {},
                                      const std::optional<FanSpec>& fan_override = std::nullopt) {
  auto sys = s.instantiate(values);
  const auto& fs = fan_override ? fan_override : s.fan;
  try {
    Fan fan = fs ? toric_compactification(sys, fs->rays, fs->cones) : toric_compactification(sys);
    return homogenize(fan, sys);
  } catch (const FanError& e) {
    throw Error(Stage::Parse, std::string("fan: ") + e.what());
  }
}

}  // namespace toric::io
