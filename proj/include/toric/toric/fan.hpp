#pragma once

#include "toric/intlat/polytope.hpp"

#include <optional>

namespace toric {

using RaySet = std::vector<std::size_t>;

/// Complete fan given by primitive rays and maximal cones (sorted ray index sets).
struct Fan {
  std::size_t n = 0;
  std::vector<IntVector> rays;
  std::vector<RaySet> max_cones;
  std::optional<Polytope> source;

  std::size_t num_rays() const { return rays.size(); }

  /// n x k matrix whose columns are the rays.
  IntMatrix F() const {
    IntMatrix M(n, rays.size());
    for (std::size_t j = 0; j < rays.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) M(i, j) = rays[j][i];
    return M;
  }

  IntMatrix Ft() const { return IntMatrix::from_rows(rays, n); }

  /// <u_j, m> for every ray.
  IntVector pair_rays(const IntVector& m) const {
    IntVector r(rays.size());
    for (std::size_t j = 0; j < rays.size(); ++j) r[j] = dot(rays[j], m);
    return r;
  }

  bool is_simplicial() const {
    for (auto& c : max_cones)
      if (c.size() != n) return false;
    return true;
  }

  /// Facets of a maximal cone, each as the set of its rays.
  std::vector<RaySet> cone_facets(std::size_t cone) const {
    const RaySet& c = max_cones.at(cone);
    std::vector<IntVector> gens;
    for (auto i : c) gens.push_back(rays[i]);
    std::vector<RaySet> out;
    if (n == 0) return out;
    for (auto& w : detail::cone_extreme_rays(gens, n)) {
      RaySet f;
      for (auto i : c)
        if (dot(w, rays[i]) == 0) f.push_back(i);
      out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// True when the ray set Z spans a face of some maximal cone.
  bool is_cone(const RaySet& Zin) const {
    RaySet Z = Zin;
    std::sort(Z.begin(), Z.end());
    for (std::size_t c = 0; c < max_cones.size(); ++c) {
      const RaySet& s = max_cones[c];
      if (!std::includes(s.begin(), s.end(), Z.begin(), Z.end())) continue;
      RaySet hull = s;
      for (auto& f : cone_facets(c)) {
        if (!std::includes(f.begin(), f.end(), Z.begin(), Z.end())) continue;
        RaySet t;
        std::set_intersection(hull.begin(), hull.end(), f.begin(), f.end(), std::back_inserter(t));
        hull = std::move(t);
      }
      if (hull == Z) return true;
    }
    return false;
  }

  /// Maximal cones that contain the ray set Z.
  std::vector<std::size_t> cones_containing(const RaySet& Z) const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < max_cones.size(); ++c)
      if (std::includes(max_cones[c].begin(), max_cones[c].end(), Z.begin(), Z.end())) out.push_back(c);
    return out;
  }
};

class FanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Normal fan of a full-dimensional polytope. Rays follow the facet order of P.
inline Fan normal_fan(const Polytope& P) {
  if (!P.full_dimensional()) throw FanError("polytope is not full-dimensional");
  Fan fan;
  fan.n = P.ambient_dim();
  for (auto& f : P.facets()) fan.rays.push_back(f.normal);
  for (auto& v : P.vertices()) {
    RaySet c;
    for (std::size_t i = 0; i < P.facets().size(); ++i)
      if (P.facets()[i].eval(v) == 0) c.push_back(i);
    fan.max_cones.push_back(std::move(c));
  }
  fan.source = P;
  return fan;
}

/// Normal fan of P with a prescribed ray order (must be a permutation of the
/// facet normals).
inline Fan normal_fan(const Polytope& P, const std::vector<IntVector>& rays) {
  Fan base = normal_fan(P);
  if (rays.size() != base.rays.size()) throw FanError("fan override: ray count does not match the normal fan");
  std::vector<std::size_t> perm(base.rays.size());
  std::vector<bool> used(rays.size(), false);
  for (std::size_t i = 0; i < base.rays.size(); ++i) {
    auto it = std::find(rays.begin(), rays.end(), base.rays[i]);
    if (it == rays.end()) throw FanError("fan override: ray " + to_string(base.rays[i]) + " missing");
    std::size_t j = static_cast<std::size_t>(it - rays.begin());
    if (used[j]) throw FanError("fan override: duplicate ray");
    used[j] = true;
    perm[i] = j;
  }
  Fan fan;
  fan.n = base.n;
  fan.rays = rays;
  for (auto& c : base.max_cones) {
    RaySet d;
    for (auto i : c) d.push_back(perm[i]);
    std::sort(d.begin(), d.end());
    fan.max_cones.push_back(std::move(d));
  }
  fan.source = P;
  return fan;
}

/// Fan from explicit rays and maximal cones.
inline Fan make_fan(std::size_t n, std::vector<IntVector> rays, std::vector<RaySet> cones) {
  Fan fan;
  fan.n = n;
  for (auto& r : rays) {
    if (r.size() != n) throw FanError("fan: ray of wrong length");
    if (gcd_of(r) != 1) throw FanError("fan: ray " + to_string(r) + " is not primitive");
  }
  for (auto& c : cones) {
    std::sort(c.begin(), c.end());
    for (auto i : c)
      if (i >= rays.size()) throw FanError("fan: cone refers to a missing ray");
  }
  fan.rays = std::move(rays);
  fan.max_cones = std::move(cones);
  return fan;
}

/// Exponent vectors of x^{sigma-hat} = prod of variables not in sigma.
inline std::vector<IntVector> irrelevant_generators(const Fan& fan) {
  std::vector<IntVector> out;
  for (auto& c : fan.max_cones) {
    IntVector e(fan.num_rays(), 1);
    for (auto i : c) e[i] = 0;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace toric
