// Writes the bundled example systems (data/*.json) into a directory.
//   make_systems <dir>

#include "toric/toric.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace toric;
using namespace toric::io;

namespace {

using Terms = std::vector<std::pair<IntVector, Complex>>;

LaurentPolynomial poly(std::size_t n, Terms t) { return {n, std::move(t)}; }

void write(const std::filesystem::path& dir, const std::string& name, const SystemFile& s) {
  std::ofstream out(dir / name);
  out << system_json(s).dump(2) << "\n";
  std::cout << "wrote " << (dir / name).string() << "\n";
}

// f1 = -1 + t1 + t1^2 + t2 + t1 t2, f2 = -2 + 2 t1 + c t1^2 + 4 t2 + 5 t1 t2
std::vector<LaurentPolynomial> intro(double c) {
  return {poly(2, {{{0, 0}, -1}, {{1, 0}, 1}, {{2, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}}),
          poly(2, {{{0, 0}, -2}, {{1, 0}, 2}, {{2, 0}, c}, {{0, 1}, 4}, {{1, 1}, 5}})};
}

SystemFile intro_template() {
  SystemFile s = system_from_laurent(intro(3));
  s.parameters["e"] = 0;
  for (auto& t : s.equations[1])
    if (t.exponent == IntVector{2, 0}) t.re = {0, "5 - 2*10^(-e)"};
  return s;
}

SystemFile double_pillow() {
  SystemFile s = system_from_laurent({poly(2, {{{1, 0}, 1}, {{0, -1}, -1}, {{0, 1}, 1}, {{-1, 0}, 1}}),
                                      poly(2, {{{1, 0}, 2}, {{0, -1}, 1}, {{0, 1}, -1}, {{-1, 0}, -1}})});
  s.fan = FanSpec{{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}, {}};
  return s;
}

// Lines on a cubic surface: coefficients c_0..c_19 drawn from seed 7,
// unknowns (s, t, u, v).
SystemFile lines27() {
  Rng rng(7);
  std::vector<Complex> c(20);
  for (auto& x : c) x = complex_gaussian(rng);
  auto m = [](Int s, Int t, Int u, Int v) { return IntVector{s, t, u, v}; };
  std::vector<LaurentPolynomial> sys{
      poly(4, {{m(0, 3, 0, 0), c[0]}, {m(0, 2, 0, 1), c[1]}, {m(0, 1, 0, 2), c[2]}, {m(0, 0, 0, 3), c[3]},
               {m(0, 2, 0, 0), c[4]}, {m(0, 1, 0, 1), c[5]}, {m(0, 0, 0, 2), c[6]}, {m(0, 1, 0, 0), c[7]},
               {m(0, 0, 0, 1), c[8]}, {m(0, 0, 0, 0), c[9]}}),
      poly(4, {{m(3, 0, 0, 0), c[0]}, {m(2, 0, 1, 0), c[1]}, {m(1, 0, 2, 0), c[2]}, {m(0, 0, 3, 0), c[3]},
               {m(2, 0, 0, 0), c[10]}, {m(1, 0, 1, 0), c[11]}, {m(0, 0, 2, 0), c[12]}, {m(1, 0, 0, 0), c[16]},
               {m(0, 0, 1, 0), c[17]}, {m(0, 0, 0, 0), c[19]}}),
      poly(4, {{m(1, 2, 0, 0), 3.0 * c[0]}, {m(1, 1, 0, 1), 2.0 * c[1]}, {m(1, 0, 0, 2), c[2]},
               {m(0, 2, 1, 0), c[1]},       {m(0, 1, 1, 1), 2.0 * c[2]}, {m(0, 0, 1, 2), 3.0 * c[3]},
               {m(1, 1, 0, 0), 2.0 * c[4]}, {m(1, 0, 0, 1), c[5]},       {m(0, 2, 0, 0), c[10]},
               {m(0, 1, 1, 0), c[5]},       {m(0, 1, 0, 1), c[11]},      {m(0, 0, 1, 1), 2.0 * c[6]},
               {m(0, 0, 0, 2), c[12]},      {m(1, 0, 0, 0), c[7]},       {m(0, 1, 0, 0), c[13]},
               {m(0, 0, 1, 0), c[8]},       {m(0, 0, 0, 1), c[14]},      {m(0, 0, 0, 0), c[15]}}),
      poly(4, {{m(2, 1, 0, 0), 3.0 * c[0]}, {m(2, 0, 0, 1), c[1]},        {m(1, 1, 1, 0), 2.0 * c[1]},
               {m(1, 0, 1, 1), 2.0 * c[2]}, {m(0, 1, 2, 0), c[2]},        {m(0, 0, 2, 1), 3.0 * c[3]},
               {m(2, 0, 0, 0), c[4]},       {m(1, 1, 0, 0), 2.0 * c[10]}, {m(1, 0, 1, 0), c[5]},
               {m(1, 0, 0, 1), c[11]},      {m(0, 1, 1, 0), c[11]},       {m(0, 0, 2, 0), c[6]},
               {m(0, 0, 1, 1), 2.0 * c[12]}, {m(1, 0, 0, 0), c[13]},      {m(0, 1, 0, 0), c[16]},
               {m(0, 0, 1, 0), c[14]},      {m(0, 0, 0, 1), c[17]},       {m(0, 0, 0, 0), c[18]}})};
  SystemFile s = system_from_laurent(sys, {"s", "t", "u", "v"});
  s.fan = FanSpec{{{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, -1, 0}, {0, -1, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}}, {}};
  return s;
}

// Dense equations of degrees 2 and 3 in two variables (seed 11).
SystemFile plane_2_3() {
  Rng rng(11);
  std::vector<LaurentPolynomial> sys;
  for (Int d : {2, 3}) {
    LaurentPolynomial f{2, {}};
    for (Int a = 0; a <= d; ++a)
      for (Int b = 0; a + b <= d; ++b) f.terms.push_back({{a, b}, complex_gaussian(rng)});
    sys.push_back(std::move(f));
  }
  return system_from_laurent(sys);
}

// t - 2 = 0: the single point t = 2 on the projective line.
SystemFile single_equation() { return system_from_laurent({poly(1, {{{0}, -2}, {{1}, 1}})}); }

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_systems <dir>\n";
    return 2;
  }
  std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);
  write(dir, "intro_template.json", intro_template());
  write(dir, "hirzebruch.json", system_from_laurent(intro(3)));
  write(dir, "double_pillow.json", double_pillow());
  write(dir, "lines27.json", lines27());
  write(dir, "plane_2_3.json", plane_2_3());
  write(dir, "single_equation.json", single_equation());
  return 0;
}
