#pragma once

#include "toric/intlat/integer.hpp"
#include "toric/intlat/smith.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace toric {

/// <normal, m> + offset >= 0 (or == 0 for equalities).
struct Halfspace {
  IntVector normal;
  Rational offset;

  Rational eval(const RatVector& m) const { return dot(normal, m) + offset; }
  Rational eval(const IntVector& m) const { return Rational(dot(normal, m)) + offset; }

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

class UnboundedError : public std::runtime_error {
 public:
  UnboundedError() : std::runtime_error("unbounded support") {}
};

namespace detail {

inline RatVector rat_sub(const RatVector& a, const RatVector& b) {
  RatVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline BigInt lcm_big(const BigInt& a, const BigInt& b) {
  return a / boost::multiprecision::gcd(a, b) * b;
}

/// Extreme rays of the pointed cone {y : <a_i, y> >= 0} by double description.
/// Requires the rows to have full column rank d.
inline std::vector<IntVector> cone_extreme_rays(const std::vector<IntVector>& A, std::size_t d) {
  using Bits = boost::dynamic_bitset<>;
  const std::size_t m = A.size();

  // pick d independent rows greedily
  std::vector<std::size_t> basis;
  {
    RatMatrix acc(0, d);
    for (std::size_t i = 0; i < m && basis.size() < d; ++i) {
      RatMatrix trial(basis.size() + 1, d);
      for (std::size_t r = 0; r < basis.size(); ++r)
        for (std::size_t c = 0; c < d; ++c) trial(r, c) = A[basis[r]][c];
      for (std::size_t c = 0; c < d; ++c) trial(basis.size(), c) = A[i][c];
      if (rational_rank(trial) == basis.size() + 1) basis.push_back(i);
    }
  }
  if (basis.size() < d) throw std::invalid_argument("cone_extreme_rays: constraints not of full rank");

  struct Ray {
    IntVector y;
    Bits tight;
  };
  std::vector<Ray> rays;
  RatMatrix B(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) B(r, c) = A[basis[r]][c];
  for (std::size_t j = 0; j < d; ++j) {
    RatVector e(d, Rational(0));
    e[j] = 1;
    auto x = solve_rational(B, e);
    BigInt den = 1;
    for (auto& v : *x) den = lcm_big(den, denominator(v));
    IntVector y(d);
    for (std::size_t c = 0; c < d; ++c) y[c] = to_int(Rational((*x)[c] * Rational(den)));
    Ray ray{primitive(y), Bits(m)};
    for (std::size_t r = 0; r < d; ++r)
      if (r != j) ray.tight.set(basis[r]);
    rays.push_back(std::move(ray));
  }

  std::vector<bool> in_basis(m, false);
  for (auto b : basis) in_basis[b] = true;

  for (std::size_t i = 0; i < m; ++i) {
    if (in_basis[i]) continue;
    std::vector<Int> s(rays.size());
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      s[r] = dot(A[i], rays[r].y);
      if (s[r] > 0)
        pos.push_back(r);
      else if (s[r] < 0)
        neg.push_back(r);
      else
        zero.push_back(r);
    }
    if (neg.empty()) {
      for (auto r : zero) rays[r].tight.set(i);
      continue;
    }
    std::vector<Ray> next;
    for (auto r : pos) next.push_back(rays[r]);
    for (auto r : zero) {
      next.push_back(rays[r]);
      next.back().tight.set(i);
    }
    for (auto p : pos)
      for (auto q : neg) {
        Bits common = rays[p].tight & rays[q].tight;
        if (common.count() + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.is_subset_of(rays[r].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        IntVector y = sub(scale(s[p], rays[q].y), scale(s[q], rays[p].y));
        Ray nr{primitive(y), common};
        nr.tight.set(i);
        next.push_back(std::move(nr));
      }
    rays = std::move(next);
  }
  std::vector<IntVector> out;
  for (auto& r : rays) out.push_back(r.y);
  return out;
}

/// Calls fn on every k-subset of {0..n-1} in lexicographic order.
inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Convex polytope with rational vertices. Facets are stored as primitive
/// inner normals; for lower-dimensional polytopes the affine hull is given by
/// `equalities` and facet normals are lifted from a coordinate projection.
class Polytope {
 public:
  Polytope() = default;
  explicit Polytope(std::size_t ambient) : n_(ambient) {}

  static Polytope from_points(const std::vector<IntVector>& pts, std::size_t ambient) {
    std::vector<RatVector> r;
    for (auto& p : pts) r.push_back(to_rational(p));
    return from_points(r, ambient);
  }

  static Polytope from_points(const std::vector<IntVector>& pts) {
    if (pts.empty()) throw std::invalid_argument("from_points: no points and no dimension");
    return from_points(pts, pts[0].size());
  }

  static Polytope from_points(std::vector<RatVector> pts, std::size_t ambient) {
    Polytope P(ambient);
    for (auto& p : pts)
      if (p.size() != ambient) throw std::invalid_argument("from_points: dimension mismatch");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty()) return P;
    const RatVector& p0 = pts[0];

    RatMatrix Dm(pts.size() - 1, ambient);
    for (std::size_t i = 1; i < pts.size(); ++i)
      for (std::size_t j = 0; j < ambient; ++j) Dm(i - 1, j) = pts[i][j] - p0[j];
    auto [R, J] = rref(Dm);
    const std::size_t r = J.size();
    P.dim_ = static_cast<int>(r);

    // affine hull equations from the integer kernel of the direction space
    {
      IntMatrix Di(Dm.rows(), ambient);
      for (std::size_t i = 0; i < Dm.rows(); ++i) {
        BigInt den = 1;
        for (std::size_t j = 0; j < ambient; ++j) den = detail::lcm_big(den, denominator(Dm(i, j)));
        for (std::size_t j = 0; j < ambient; ++j) Di(i, j) = to_int(Rational(Dm(i, j) * Rational(den)));
      }
      IntMatrix K = Dm.rows() ? integer_kernel(Di) : IntMatrix::identity(ambient);
      for (std::size_t i = 0; i < K.rows(); ++i) {
        IntVector u = K.row(i);
        P.equalities_.push_back({u, -dot(u, p0)});
      }
    }

    if (r == 0) {
      P.vertices_ = {p0};
      return P;
    }

    // homogenized projected points, scaled to integers
    BigInt den = 1;
    for (auto& p : pts)
      for (auto j : J) den = detail::lcm_big(den, denominator(p[j]));
    const Int L = to_int(den);
    std::vector<IntVector> rows;
    for (auto& p : pts) {
      IntVector row(r + 1);
      for (std::size_t c = 0; c < r; ++c) row[c] = to_int(Rational(p[J[c]] * Rational(L)));
      row[r] = L;
      rows.push_back(std::move(row));
    }
    auto rays = detail::cone_extreme_rays(rows, r + 1);
    std::vector<IntVector> proj_normals;
    for (auto& y : rays) {
      IntVector w(ambient, 0);
      for (std::size_t c = 0; c < r; ++c) w[J[c]] = y[c];
      Int g = gcd_of(w);
      if (g == 0) continue;  // only for degenerate input
      for (auto& x : w) x /= g;
      P.facets_.push_back({w, Rational(y[r]) / Rational(g)});
    }
    std::sort(P.facets_.begin(), P.facets_.end(), [](const Halfspace& a, const Halfspace& b) {
      if (a.normal != b.normal) return a.normal > b.normal;
      return a.offset < b.offset;
    });

    // vertices: points whose tight facet normals span the projected space
    for (auto& p : pts) {
      std::vector<IntVector> tight;
      for (auto& f : P.facets_)
        if (f.eval(p) == 0) tight.push_back(f.normal);
      if (tight.size() < r) continue;
      RatMatrix T(tight.size(), r);
      for (std::size_t i = 0; i < tight.size(); ++i)
        for (std::size_t c = 0; c < r; ++c) T(i, c) = tight[i][J[c]];
      if (rational_rank(T) == r) P.vertices_.push_back(p);
    }
    return P;
  }

  /// {m : <u_i, m> + b_i >= 0}. Throws UnboundedError when the set is unbounded.
  static Polytope from_hrep(const std::vector<Halfspace>& hs, std::size_t ambient) {
    std::vector<IntVector> N;
    for (auto& h : hs) N.push_back(h.normal);
    if (N.empty() || integer_rank(IntMatrix::from_rows(N, ambient)) < ambient) throw UnboundedError();
    // recession cone {y : N y >= 0} must be trivial
    if (ambient > 1) {
      bool unbounded = false;
      detail::for_each_subset(N.size(), ambient - 1, [&](const std::vector<std::size_t>& S) {
        if (unbounded) return;
        std::vector<IntVector> sub;
        for (auto i : S) sub.push_back(N[i]);
        IntMatrix K = integer_kernel(IntMatrix::from_rows(sub, ambient));
        if (K.rows() != 1) return;
        IntVector y = K.row(0);
        bool pos = true, neg = true;
        for (auto& u : N) {
          Int v = dot(u, y);
          if (v < 0) pos = false;
          if (v > 0) neg = false;
        }
        if (pos || neg) unbounded = true;
      });
      if (unbounded) throw UnboundedError();
    } else {
      bool up = false, down = false;
      for (auto& u : N) {
        if (u[0] > 0) up = true;
        if (u[0] < 0) down = true;
      }
      if (!up || !down) throw UnboundedError();
    }

    std::vector<RatVector> verts;
    detail::for_each_subset(hs.size(), ambient, [&](const std::vector<std::size_t>& S) {
      RatMatrix A(ambient, ambient);
      RatVector b(ambient);
      for (std::size_t r = 0; r < ambient; ++r) {
        for (std::size_t c = 0; c < ambient; ++c) A(r, c) = hs[S[r]].normal[c];
        b[r] = -hs[S[r]].offset;
      }
      if (determinant(A) == 0) return;
      auto x = solve_rational(A, b);
      for (auto& h : hs)
        if (h.eval(*x) < 0) return;
      verts.push_back(*x);
    });
    return from_points(verts, ambient);
  }

  static Polytope point(const IntVector& p) { return from_points(std::vector<IntVector>{p}, p.size()); }

  std::size_t ambient_dim() const { return n_; }
  /// Affine dimension; -1 for the empty polytope.
  int dim() const { return dim_; }
  bool empty() const { return vertices_.empty(); }
  bool full_dimensional() const { return dim_ == static_cast<int>(n_); }

  const std::vector<RatVector>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  const std::vector<Halfspace>& equalities() const { return equalities_; }

  bool is_lattice() const {
    for (auto& v : vertices_)
      if (!is_integral(v)) return false;
    return true;
  }

  std::vector<IntVector> integer_vertices() const {
    std::vector<IntVector> r;
    for (auto& v : vertices_) r.push_back(to_int_vector(v));
    return r;
  }

  template <class Vec>
  bool contains(const Vec& m) const {
    if (empty()) return false;
    for (auto& e : equalities_)
      if (e.eval(m) != 0) return false;
    for (auto& f : facets_)
      if (f.eval(m) < 0) return false;
    return true;
  }

  /// Relative interior membership.
  template <class Vec>
  bool in_relint(const Vec& m) const {
    if (empty()) return false;
    for (auto& e : equalities_)
      if (e.eval(m) != 0) return false;
    for (auto& f : facets_)
      if (f.eval(m) <= 0) return false;
    return true;
  }

  /// Minimum of <u, .> over the polytope.
  Rational min_dot(const IntVector& u) const {
    if (empty()) throw std::logic_error("min_dot on empty polytope");
    Rational best = dot(u, vertices_[0]);
    for (auto& v : vertices_) best = std::min(best, dot(u, v));
    return best;
  }

  Polytope scaled(const Rational& c) const {
    if (empty()) return *this;
    if (c == 0) return point(IntVector(n_, 0));
    if (c < 0) throw std::invalid_argument("dilate: negative factor");
    Polytope P = *this;
    for (auto& v : P.vertices_)
      for (auto& x : v) x *= c;
    for (auto& f : P.facets_) f.offset *= c;
    for (auto& e : P.equalities_) e.offset *= c;
    return P;
  }

  Polytope translated(const RatVector& t) const {
    Polytope P = *this;
    for (auto& v : P.vertices_)
      for (std::size_t i = 0; i < n_; ++i) v[i] += t[i];
    for (auto& f : P.facets_) f.offset -= dot(f.normal, t);
    for (auto& e : P.equalities_) e.offset -= dot(e.normal, t);
    return P;
  }

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.n_ == b.n_ && a.vertices_ == b.vertices_;
  }

 private:
  std::size_t n_ = 0;
  int dim_ = -1;
  std::vector<RatVector> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<Halfspace> equalities_;
};

namespace detail {

template <class Pred>
std::vector<IntVector> box_points(const Polytope& P, Pred keep) {
  std::vector<IntVector> out;
  if (P.empty()) return out;
  const std::size_t n = P.ambient_dim();
  IntVector lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational mn = P.vertices()[0][j], mx = mn;
    for (auto& v : P.vertices()) {
      mn = std::min(mn, v[j]);
      mx = std::max(mx, v[j]);
    }
    lo[j] = to_int(ceil_rat(mn));
    hi[j] = to_int(floor_rat(mx));
    if (lo[j] > hi[j]) return out;
  }
  if (n == 0) {
    out.push_back({});
    return out;
  }
  IntVector m = lo;
  for (;;) {
    if (keep(m)) out.push_back(m);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (m[j] < hi[j]) {
        ++m[j];
        for (std::size_t k = j + 1; k < n; ++k) m[k] = lo[k];
        break;
      }
      if (j == 0) return out;
    }
  }
}

}  // namespace detail

/// Integer points of P in lexicographic order.
inline std::vector<IntVector> lattice_points(const Polytope& P) {
  return detail::box_points(P, [&](const IntVector& m) { return P.contains(m); });
}

inline std::vector<IntVector> relint_lattice_points(const Polytope& P) {
  return detail::box_points(P, [&](const IntVector& m) { return P.in_relint(m); });
}

inline Polytope minkowski_sum(const Polytope& P, const Polytope& Q) {
  if (P.ambient_dim() != Q.ambient_dim()) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  if (P.empty() || Q.empty()) return Polytope(P.ambient_dim());
  std::vector<RatVector> pts;
  for (auto& a : P.vertices())
    for (auto& b : Q.vertices()) {
      RatVector s(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
      pts.push_back(std::move(s));
    }
  return Polytope::from_points(pts, P.ambient_dim());
}

inline Polytope minkowski_sum(const std::vector<Polytope>& Ps) {
  if (Ps.empty()) throw std::invalid_argument("minkowski_sum: empty list");
  Polytope S = Ps[0];
  for (std::size_t i = 1; i < Ps.size(); ++i) S = minkowski_sum(S, Ps[i]);
  return S;
}

inline Polytope dilate(const Polytope& P, const Rational& c) { return P.scaled(c); }

/// Smallest c >= 1 such that c*P has an interior lattice point.
inline Int codegree(const Polytope& P) {
  if (!P.full_dimensional()) throw std::invalid_argument("codegree: polytope not full-dimensional");
  for (Int c = 1; c <= P.dim() + 2; ++c)
    if (!relint_lattice_points(P.scaled(c)).empty()) return c;
  throw std::logic_error("codegree: search cap exceeded (non-lattice input?)");
}

namespace detail {

inline std::size_t affine_rank(const std::vector<RatVector>& V, const std::vector<std::size_t>& S) {
  if (S.size() <= 1) return 0;
  RatMatrix D(S.size() - 1, V[0].size());
  for (std::size_t i = 1; i < S.size(); ++i)
    for (std::size_t j = 0; j < V[0].size(); ++j) D(i - 1, j) = V[S[i]][j] - V[S[0]][j];
  return rational_rank(D);
}

// Triangulates the face with vertex set S (dimension k) by coning from its
// smallest vertex over the facets of the face not containing it.
inline void triangulate_face(const std::vector<RatVector>& V,
                             const std::vector<std::vector<std::size_t>>& facet_sets,
                             const std::vector<std::size_t>& S, std::size_t k,
                             std::vector<std::vector<std::size_t>>& out) {
  if (k == 0) {
    out.push_back({S[0]});
    return;
  }
  if (S.size() == k + 1) {
    out.push_back(S);
    return;
  }
  std::set<std::vector<std::size_t>> subfaces;
  for (auto& F : facet_sets) {
    std::vector<std::size_t> T;
    std::set_intersection(S.begin(), S.end(), F.begin(), F.end(), std::back_inserter(T));
    if (T.size() < k || T.size() == S.size()) continue;
    if (affine_rank(V, T) == k - 1) subfaces.insert(T);
  }
  const std::size_t apex = S[0];
  for (auto& T : subfaces) {
    if (std::binary_search(T.begin(), T.end(), apex)) continue;
    std::vector<std::vector<std::size_t>> sub;
    triangulate_face(V, facet_sets, T, k - 1, sub);
    for (auto& s : sub) {
      std::vector<std::size_t> simplex{apex};
      simplex.insert(simplex.end(), s.begin(), s.end());
      out.push_back(std::move(simplex));
    }
  }
}

}  // namespace detail

/// Full-dimensional simplices (vertex index tuples) covering P.
inline std::vector<std::vector<std::size_t>> triangulate(const Polytope& P) {
  std::vector<std::vector<std::size_t>> out;
  if (P.empty()) return out;
  const auto& V = P.vertices();
  std::vector<std::vector<std::size_t>> facet_sets;
  for (auto& f : P.facets()) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < V.size(); ++i)
      if (f.eval(V[i]) == 0) s.push_back(i);
    facet_sets.push_back(std::move(s));
  }
  std::vector<std::size_t> all(V.size());
  for (std::size_t i = 0; i < V.size(); ++i) all[i] = i;
  detail::triangulate_face(V, facet_sets, all, static_cast<std::size_t>(P.dim()), out);
  return out;
}

/// Euclidean volume; zero for polytopes that are not full-dimensional.
inline Rational volume(const Polytope& P) {
  if (P.empty() || !P.full_dimensional()) return 0;
  const std::size_t n = P.ambient_dim();
  if (n == 0) return 1;
  const auto& V = P.vertices();
  Rational total = 0;
  for (auto& s : triangulate(P)) {
    RatMatrix M(n, n);
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 0; j < n; ++j) M(i - 1, j) = V[s[i]][j] - V[s[0]][j];
    Rational d = determinant(M);
    total += d < 0 ? Rational(-d) : d;
  }
  Rational fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= Rational(static_cast<Int>(i));
  return total / fact;
}

/// Mixed volume normalized so that MV(P, ..., P) = n! vol(P).
inline Int mixed_volume(const std::vector<Polytope>& Ps) {
  const std::size_t n = Ps.size();
  for (auto& P : Ps)
    if (P.ambient_dim() != n) throw std::invalid_argument("mixed_volume: need n polytopes in R^n");
  Rational mv = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Polytope> sel;
    for (std::size_t j = 0; j < n; ++j)
      if (mask >> j & 1) sel.push_back(Ps[j]);
    Rational v = volume(minkowski_sum(sel));
    std::size_t missing = n - static_cast<std::size_t>(__builtin_popcountll(mask));
    mv += (missing % 2 ? Rational(-v) : v);
  }
  return to_int(mv);
}

}  // namespace toric
