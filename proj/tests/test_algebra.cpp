#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "holofol/algebra.hpp"
#include "holofol/errors.hpp"
#include "support.hpp"

using namespace holofol;
using testing::I;
using testing::poly;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::kInvalidArgument;
}

}  // namespace

TEST_CASE("canonical form drops tiny coefficients and merges terms") {
  BivarPoly p = poly({{1, 0, 1.0}, {1, 0, 0.5}, {0, 1, 1e-13}});
  CHECK(p.terms().size() == 1);
  CHECK(p.coeff(1, 0) == Complex(1.5));
  CHECK((BivarPoly::z() - BivarPoly::z()).is_zero());
  CHECK(BivarPoly().degree() == -1);
}

TEST_CASE("graded-lex leading term prefers z") {
  const BivarPoly p = poly({{0, 2, 5.0}, {1, 1, 3.0}, {2, 0, 7.0}, {0, 0, 1.0}});
  CHECK(p.leading_exponent() == Exponent{2, 0});
  CHECK(p.leading_coeff() == Complex(7.0));
  CHECK(poly({{0, 3, 1.0}, {2, 0, 1.0}}).leading_exponent() == Exponent{0, 3});
}

TEST_CASE("from_terms rejects invalid input") {
  BivarPoly::TermMap bad;
  bad[{-1, 0}] = 1.0;
  CHECK(kind_of([&] { BivarPoly::from_terms(bad); }) == ErrorKind::kInvalidArgument);
  BivarPoly::TermMap nan;
  nan[{0, 0}] = Complex(std::nan(""), 0.0);
  CHECK(kind_of([&] { BivarPoly::from_terms(nan); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("partial derivatives") {
  const BivarPoly P = poly({{0, 1, 1.0}, {3, 0, 1.0}, {1, 2, 1.0}, {1, 0, 1.0}});
  CHECK(partial_derivative(P, Var::z) == poly({{2, 0, 3.0}, {0, 2, 1.0}, {0, 0, 1.0}}));
  CHECK(partial_derivative(BivarPoly::constant(4.0 + I), Var::w).is_zero());
  CHECK(partial_derivative(testing::cubic_curve(), Var::z) == poly({{1, 0, 2.0}}));
}

TEST_CASE("evaluation") {
  const BivarPoly F = testing::cubic_curve();
  CHECK(std::abs(F(I, 0.0)) < 1e-15);
  CHECK(F(1.0, 2.0) == Complex(6.0));
}

TEST_CASE("exact division") {
  const BivarPoly F = testing::cubic_curve();
  const BivarPoly K = poly({{2, 0, 2.0}, {0, 2, 2.0}});
  const auto q = exact_divide(K * F, F);
  REQUIRE(q);
  CHECK(*q == K);

  const BivarPoly zw = poly({{1, 0, 1.0}, {0, 1, 1.0}});
  CHECK_FALSE(exact_divide(F, zw));
  // Long division by hand: F = (z - w)(z + w) + 2w^2 + 1.
  const BivarDivision d = divide(F, zw);
  CHECK(d.quotient == poly({{1, 0, 1.0}, {0, 1, -1.0}}));
  CHECK(d.remainder == poly({{0, 2, 2.0}, {0, 0, 1.0}}));

  const auto one = exact_divide(F, F);
  REQUIRE(one);
  CHECK(*one == BivarPoly::constant(1.0));

  CHECK(kind_of([&] { divide(F, BivarPoly()); }) == ErrorKind::kDivisionByZero);
  CHECK(kind_of([&] { exact_divide(F, BivarPoly()); }) == ErrorKind::kDivisionByZero);
}

TEST_CASE("to_string") {
  CHECK(to_string(poly({{2, 0, 2.0}, {0, 2, 2.0}})) == "2z^2 + 2w^2");
  CHECK(to_string(BivarPoly()) == "0");
}

TEST_CASE("property: Leibniz rule") {
  std::mt19937_64 rng(20240611);
  for (int n = 0; n < 150; ++n) {
    const BivarPoly p = testing::random_poly(rng, 4, 5);
    const BivarPoly q = testing::random_poly(rng, 4, 5);
    for (Var v : {Var::z, Var::w}) {
      const BivarPoly lhs = partial_derivative(p * q, v);
      const BivarPoly rhs = partial_derivative(p, v) * q + p * partial_derivative(q, v);
      CHECK(approx_equal(lhs, rhs, 1e-12));
    }
  }
}

TEST_CASE("property: exact_divide(f g, g) = f") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 150; ++n) {
    const BivarPoly f = testing::random_poly(rng, 4, 5);
    const BivarPoly g = testing::random_poly(rng, 3, 4);
    const auto q = exact_divide(f * g, g);
    REQUIRE(q);
    CHECK(approx_equal(*q, f, 1e-9));
  }
}

TEST_CASE("univariate helpers") {
  const Poly1 p({-2.0, 0.0, 1.0});  // t^2 - 2
  Complex rem;
  const Poly1 q = deflate(p, std::sqrt(2.0), &rem);
  CHECK(std::abs(rem) < 1e-14);
  CHECK(std::abs(q[0] - std::sqrt(2.0)) < 1e-14);
  // p(1 + u) = -1 + 2u + u^2
  const Poly1 s = taylor_shift(p, 1.0);
  CHECK(std::abs(s[0] + 1.0) < 1e-15);
  CHECK(std::abs(s[1] - 2.0) < 1e-15);
  CHECK(std::abs(s[2] - 1.0) < 1e-15);
  CHECK(power(Poly1({1.0, 1.0}), 3) == Poly1({1.0, 3.0, 3.0, 1.0}));

  auto roots = polynomial_roots(Poly1({0.0, 0.0, -1.0, 0.0, 1.0}));  // t^2 (t^2 - 1)
  REQUIRE(roots.size() == 4);
  int zeros = 0;
  for (Complex r : roots) zeros += r == Complex(0.0);
  CHECK(zeros == 2);
  CHECK(kind_of([] { polynomial_roots(Poly1()); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("Laurent residues") {
  CHECK(laurent_residue(LaurentPoly::monomial(-I, -1)) == -I);
  const LaurentPoly p = LaurentPoly::monomial(4.0, -1) + LaurentPoly::monomial(2.0, -3);
  CHECK(laurent_residue(p) == Complex(4.0));
  CHECK(laurent_residue(LaurentPoly::monomial(1.0, 2)) == Complex(0.0));
}

TEST_CASE("rational function normal form") {
  // (t^2 + t) / t^3 = (t + 1) / t^2
  const RationalFunc1 r(Poly1({0.0, 1.0, 1.0}), Poly1({0.0, 0.0, 0.0, 2.0}));
  CHECK(r.den() == Poly1({0.0, 0.0, 1.0}));
  CHECK(r.num() == Poly1({0.5, 0.5}));
  CHECK(kind_of([] { RationalFunc1(Poly1({1.0}), Poly1()); }) == ErrorKind::kDivisionByZero);

  // (t - 2)(t + 1) / ((t - 2)(t - 3)) reduces to (t + 1)/(t - 3).
  const RationalFunc1 c(Poly1({-2.0, -1.0, 1.0}), Poly1({6.0, -5.0, 1.0}));
  const RationalFunc1 red = c.reduced();
  CHECK(red.den().degree() == 1);
  CHECK(std::abs(red(0.5) - c(0.5)) < 1e-13);

  const RationalFunc1 sum = testing::laurent({{1, 1.0}}) + testing::laurent({{-1, 1.0}});
  const auto l = sum.as_laurent();
  REQUIRE(l);
  CHECK(l->coeff(-1) == Complex(1.0));
  CHECK(l->coeff(1) == Complex(1.0));
}

TEST_CASE("residues in a disk") {
  const Poly1 one({1.0});
  CHECK(std::abs(rational_residues_in_disk(RationalFunc1(one, Poly1({-2.0, 1.0})), 1.0)) == 0.0);
  // 1/(t(t-2)) = -1/(2t) + 1/(2(t-2))
  const RationalFunc1 r(one, Poly1({0.0, -2.0, 1.0}));
  CHECK(std::abs(rational_residues_in_disk(r, 1.0) - Complex(-0.5)) < 1e-14);
  CHECK(std::abs(rational_residues_in_disk(r, 3.0)) < 1e-14);

  // t^3/(t - a)^2 has residue 3a^2 at a.
  const Complex a(0.3, -0.2);
  const RationalFunc1 dbl(Poly1({0.0, 0.0, 0.0, 1.0}), Poly1({a * a, -2.0 * a, 1.0}));
  CHECK(std::abs(rational_residues_in_disk(dbl, 1.0) - 3.0 * a * a) < 1e-10);
  const auto ps = poles(dbl);
  REQUIRE(ps.size() == 1);
  CHECK(ps[0].order == 2);

  // Triple pole at 0 through the t^k factor: (1 + 5t^2)/t^3 has residue 5.
  const RationalFunc1 triple(Poly1({1.0, 0.0, 5.0}), Poly1({0.0, 0.0, 0.0, 1.0}));
  CHECK(std::abs(rational_residues_in_disk(triple, 0.5) - 5.0) < 1e-14);

  CHECK(kind_of([&] { rational_residues_in_disk(r, 2.0); }) == ErrorKind::kContourCollision);
  CHECK(kind_of([&] { rational_residues_in_disk(r, 2.0 + 1e-9); }) ==
        ErrorKind::kContourCollision);
  CHECK(kind_of([&] { rational_residues_in_disk(r, -1.0); }) == ErrorKind::kInvalidArgument);
  CHECK(std::abs(rational_residues_in_disk(r, 2.0 + 1e-6)) < 1e-12);
}

TEST_CASE("property: Laurent and rational residues agree") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::uniform_int_distribution<int> k(-5, 5);
  for (int n = 0; n < 100; ++n) {
    LaurentPoly p;
    for (int m = 0; m < 5; ++m) p += LaurentPoly::monomial(Complex(c(rng), c(rng)), k(rng));
    const RationalFunc1 r = RationalFunc1::from_laurent(p);
    CHECK(std::abs(rational_residues_in_disk(r, 1.0) - laurent_residue(p)) < 1e-12);
    CHECK(std::abs(rational_residues_in_disk(r, 0.3) - laurent_residue(p)) < 1e-12);
  }
}

TEST_CASE("composition along a rational map") {
  const auto map = testing::cubic_map();
  const RationalFunc1 r = compose(testing::cubic_curve(), map.z, map.w).reduced();
  CHECK(r.is_zero());
  const RationalFunc1 s = compose(poly({{2, 0, 1.0}, {0, 2, 1.0}}), map.z, map.w).reduced();
  for (Complex t : {Complex(0.3, 0.1), Complex(2.0, -1.0)}) CHECK(std::abs(s(t) + 1.0) < 1e-13);
}
