#pragma once

#include "toric/toric/fan.hpp"

namespace toric {

/// Canonical image of a divisor in Z^rank + torsion.
struct Degree {
  IntVector free;
  IntVector torsion;
  IntVector moduli;

  friend bool operator==(const Degree& a, const Degree& b) {
    return a.free == b.free && a.torsion == b.torsion;
  }
  friend auto operator<=>(const Degree& a, const Degree& b) {
    if (auto c = a.free <=> b.free; c != 0) return c;
    return a.torsion <=> b.torsion;
  }

  std::string str() const {
    std::string s = to_string(free);
    if (!torsion.empty()) {
      s += "+tors";
      s += to_string(torsion);
    }
    return s;
  }
};

inline Int pos_mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

/// alpha = [sum a_i D_i]; equality goes through the canonical image only.
struct DivisorClass {
  IntVector rep;
  Degree deg;

  friend bool operator==(const DivisorClass& a, const DivisorClass& b) { return a.deg == b.deg; }

  DivisorClass operator+(const DivisorClass& o) const {
    DivisorClass r{add(rep, o.rep), deg};
    r.deg.free = add(deg.free, o.deg.free);
    for (std::size_t i = 0; i < deg.torsion.size(); ++i)
      r.deg.torsion[i] = pos_mod(deg.torsion[i] + o.deg.torsion[i], deg.moduli[i]);
    return r;
  }

  DivisorClass operator*(Int c) const {
    DivisorClass r{scale(c, rep), deg};
    r.deg.free = scale(c, deg.free);
    for (std::size_t i = 0; i < deg.torsion.size(); ++i)
      r.deg.torsion[i] = pos_mod(checked_mul(c, deg.torsion[i]), deg.moduli[i]);
    return r;
  }

  DivisorClass operator-() const { return *this * -1; }
  DivisorClass operator-(const DivisorClass& o) const { return *this + (-o); }

  bool is_zero() const {
    for (auto x : deg.free)
      if (x) return false;
    for (auto x : deg.torsion)
      if (x) return false;
    return true;
  }

  std::string str() const { return deg.str(); }
};

/// Cl(X) = Z^k / im F^T. Free coordinates are G a, where the rows of G are
/// the Hermite basis of ker F; torsion coordinates come from the Smith form
/// of F^T.
class ClassGroup {
 public:
  ClassGroup() = default;

  explicit ClassGroup(const Fan& fan) : k_(fan.num_rays()), n_(fan.n) {
    IntMatrix F = fan.F();
    G_ = integer_kernel(F);
    if (G_.rows() != k_ - integer_rank(F)) throw std::logic_error("class group: kernel rank mismatch");
    auto snf = smith_normal_form(fan.Ft());
    RatMatrix Ur = convert<Rational>(snf.U);
    RatMatrix Uinv = inverse(Ur);
    auto d = snf.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] > 1) {
        moduli_.push_back(to_int(d[i]));
        IntVector row(k_), col(k_);
        for (std::size_t j = 0; j < k_; ++j) {
          row[j] = to_int(snf.U(i, j));
          col[j] = to_int(Uinv(j, i));
        }
        tors_rows_.push_back(row);
        tors_lift_.push_back(col);
      }
    }
    // right inverse of G for lifting free coordinates
    if (G_.rows() > 0) {
      auto g = smith_normal_form(G_);
      for (std::size_t i = 0; i < G_.rows(); ++i)
        if (g.D(i, i) != 1) throw std::logic_error("class group: kernel basis not saturated");
      // a = V [U c; 0]
      lift_V_ = convert<Int>(g.V);
      lift_U_ = convert<Int>(g.U);
    }
  }

  std::size_t rank() const { return G_.rows(); }
  const IntVector& torsion() const { return moduli_; }
  std::size_t num_rays() const { return k_; }
  const IntMatrix& free_map() const { return G_; }

  Degree degree(const IntVector& a) const {
    if (a.size() != k_) throw std::invalid_argument("degree: representative of wrong length");
    Degree d;
    d.moduli = moduli_;
    for (std::size_t i = 0; i < G_.rows(); ++i) d.free.push_back(dot(G_.row(i), a));
    for (std::size_t i = 0; i < moduli_.size(); ++i) d.torsion.push_back(pos_mod(dot(tors_rows_[i], a), moduli_[i]));
    return d;
  }

  DivisorClass divisor(const IntVector& a) const { return {a, degree(a)}; }

  /// Some representative a with degree(a) == (free, torsion).
  IntVector lift(const IntVector& free, const IntVector& torsion = {}) const {
    if (free.size() != rank()) throw std::invalid_argument("class coordinates: expected " + std::to_string(rank()) + " free entries");
    IntVector a(k_, 0);
    if (rank() > 0) {
      IntVector y(k_, 0);
      for (std::size_t i = 0; i < rank(); ++i) {
        Int s = 0;
        for (std::size_t j = 0; j < rank(); ++j) s = checked_add(s, checked_mul(lift_U_(i, j), free[j]));
        y[i] = s;
      }
      for (std::size_t r = 0; r < k_; ++r) {
        Int s = 0;
        for (std::size_t c = 0; c < k_; ++c) s = checked_add(s, checked_mul(lift_V_(r, c), y[c]));
        a[r] = s;
      }
    }
    if (!torsion.empty()) {
      if (torsion.size() != moduli_.size()) throw std::invalid_argument("class coordinates: wrong torsion length");
      Degree cur = degree(a);
      for (std::size_t i = 0; i < moduli_.size(); ++i) {
        Int diff = pos_mod(torsion[i] - cur.torsion[i], moduli_[i]);
        a = add(a, scale(diff, tors_lift_[i]));
      }
    }
    return a;
  }

  DivisorClass from_coordinates(const IntVector& free, const IntVector& torsion = {}) const {
    return divisor(lift(free, torsion));
  }

 private:
  static RatMatrix inverse(const RatMatrix& A) {
    const std::size_t n = A.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
      aug(i, n + i) = 1;
    }
    auto [R, piv] = rref(aug);
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = R(i, n + j);
    return inv;
  }

  std::size_t k_ = 0, n_ = 0;
  IntMatrix G_;
  IntVector moduli_;
  std::vector<IntVector> tors_rows_, tors_lift_;
  IntMatrix lift_U_, lift_V_;
};

}  // namespace toric
