#pragma once

#include "toric/toric.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>

namespace testutil {

using namespace toric;

inline std::string data_path(const std::string& name) { return std::string(TORIC_DATA_DIR) + "/" + name; }

inline Int uniform(std::mt19937_64& rng, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng); }

inline IntVector random_vector(std::mt19937_64& rng, std::size_t n, Int lo, Int hi) {
  IntVector v(n);
  for (auto& x : v) x = uniform(rng, lo, hi);
  return v;
}

inline LaurentPolynomial laurent(std::size_t n, std::vector<std::pair<IntVector, Complex>> terms) {
  return {n, std::move(terms)};
}

inline std::vector<LaurentPolynomial> intro_system(double eps) {
  return {laurent(2, {{{0, 0}, -1}, {{1, 0}, 1}, {{2, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}}),
          laurent(2, {{{0, 0}, -2}, {{1, 0}, 2}, {{2, 0}, 5 - 2 * eps}, {{0, 1}, 4}, {{1, 1}, 5}})};
}

inline std::vector<LaurentPolynomial> pillow_system() {
  return {laurent(2, {{{1, 0}, 1}, {{0, -1}, -1}, {{0, 1}, 1}, {{-1, 0}, 1}}),
          laurent(2, {{{1, 0}, 2}, {{0, -1}, 1}, {{0, 1}, -1}, {{-1, 0}, -1}})};
}

inline const std::vector<IntVector>& pillow_rays() {
  static const std::vector<IntVector> r{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  return r;
}

inline HomogeneousSystem pillow() {
  auto sys = pillow_system();
  return homogenize(toric_compactification(sys, pillow_rays()), sys);
}

inline Polytope diamond() { return Polytope::from_points({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}); }
inline Polytope simplex2() { return Polytope::from_points({{0, 0}, {1, 0}, {0, 1}}); }

inline HomogeneousSystem load(const std::string& name) {
  auto sf = io::load_system(data_path(name));
  return io::build_system(sf);
}

}  // namespace testutil
