// Solves a small system through the library API and prints the solutions.

#include "toric/toric.hpp"

#include <iostream>

using namespace toric;

int main() {
  // -1 + t1 + t1^2 + t2 + t1 t2 = 0,  -2 + 2 t1 + 3 t1^2 + 4 t2 + 5 t1 t2 = 0
  std::vector<LaurentPolynomial> sys{
      {2, {{{0, 0}, -1}, {{1, 0}, 1}, {{2, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}}},
      {2, {{{0, 0}, -2}, {{1, 0}, 2}, {{2, 0}, 3}, {{0, 1}, 4}, {{1, 1}, 5}}}};

  HomogeneousSystem H = homogenize(sys);
  std::cout << "rays:";
  for (auto& r : H.fan.rays) std::cout << " " << to_string(r);
  std::cout << "\nclass group rank " << H.cl.rank() << "\n";

  SolutionSet S = solve(H);
  std::cout << "pair alpha=" << S.pair.alpha.str() << " alpha0=" << S.pair.alpha0.str() << " ("
            << provenance_name(S.pair.provenance) << "), delta+ = " << S.delta_plus << "\n";
  for (auto& s : S.solutions) {
    std::cout << (s.on_torus ? "torus   " : "boundary") << " mult " << s.multiplicity << "  t =";
    if (s.t)
      for (auto& x : *s.t) std::cout << " " << x;
    std::cout << "  max residual " << max_residual(s.residuals) << "\n";
  }
}
