#pragma once

#include <complex>
#include <fstream>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>
#include <tuple>

#include "holofol/algebra.hpp"
#include "holofol/foliation.hpp"
#include "holofol/json_io.hpp"
#include "holofol/loops.hpp"

namespace testing {

using holofol::BivarPoly;
using holofol::Complex;
using holofol::LaurentPoly;
using holofol::RationalFunc1;

inline constexpr Complex I{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

inline BivarPoly poly(std::initializer_list<std::tuple<int, int, Complex>> terms) {
  BivarPoly p;
  for (const auto& [i, j, c] : terms) p += BivarPoly::monomial(c, i, j);
  return p;
}

inline RationalFunc1 laurent(std::initializer_list<std::pair<int, Complex>> terms) {
  LaurentPoly p;
  for (const auto& [k, c] : terms) p += LaurentPoly::monomial(c, k);
  return RationalFunc1::from_laurent(p);
}

// z' = w + z(z^2 + w^2 + 1), w' = -z + w(z^2 + w^2 + 1)
inline holofol::VectorFieldC2 cubic_field() {
  return holofol::VectorFieldC2::make(poly({{0, 1, 1.0}, {3, 0, 1.0}, {1, 2, 1.0}, {1, 0, 1.0}}),
                                      poly({{1, 0, -1.0}, {2, 1, 1.0}, {0, 3, 1.0}, {0, 1, 1.0}}));
}

inline BivarPoly cubic_curve() { return poly({{2, 0, 1.0}, {0, 2, 1.0}, {0, 0, 1.0}}); }

// z = (i/2)(t + 1/t), w = (1/2)(t - 1/t)
inline holofol::RationalMapC2 cubic_map() {
  return {laurent({{1, 0.5 * I}, {-1, 0.5 * I}}), laurent({{1, 0.5}, {-1, -0.5}})};
}

inline holofol::LoopSpec cubic_loop(holofol::Orientation o = holofol::Orientation::ccw,
                                    double radius = 1.0) {
  return {radius, o, cubic_map()};
}

// z' = z, w' = lambda w; the axis w = 0 is a leaf.
inline holofol::VectorFieldC2 linear_field(Complex lambda) {
  return holofol::VectorFieldC2::make(poly({{1, 0, 1.0}}), poly({{0, 1, lambda}}));
}

inline holofol::LoopSpec axis_loop(holofol::Orientation o = holofol::Orientation::ccw) {
  return {1.0, o, {laurent({{1, 1.0}}), RationalFunc1()}};
}

inline double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

inline BivarPoly random_poly(std::mt19937_64& rng, int max_degree, int max_terms) {
  std::uniform_int_distribution<int> count(1, max_terms);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  BivarPoly p;
  while (p.is_zero()) {
    const int n = count(rng);
    for (int k = 0; k < n; ++k) {
      const int d = deg(rng);
      std::uniform_int_distribution<int> split(0, d);
      const int i = split(rng);
      p += BivarPoly::monomial(Complex(coef(rng), coef(rng)), i, d - i);
    }
  }
  return p;
}

inline std::string fixture_path(const std::string& name) {
  return std::string(HOLOFOL_FIXTURE_DIR) + "/" + name;
}

inline holofol::json_io::Json load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return holofol::json_io::Json::parse(buffer.str());
}

}  // namespace testing
