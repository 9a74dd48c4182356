#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "holofol/errors.hpp"
#include "holofol/holonomy.hpp"
#include "support.hpp"

using namespace holofol;
using testing::I;
using testing::kPi;
using testing::rel;

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

// z' = z + w p(z, w), w' = lambda w + w q(z, w): w = 0 stays a leaf.
VectorFieldC2 perturbed_linear(std::mt19937_64& rng, Complex lambda) {
  std::uniform_real_distribution<double> c(-0.2, 0.2);
  BivarPoly p, q;
  for (int i = 0; i <= 2; ++i) {
    for (int j = 0; i + j <= 2; ++j) {
      p += BivarPoly::monomial(Complex(c(rng), c(rng)), i, j);
      q += BivarPoly::monomial(Complex(c(rng), c(rng)), i, j);
    }
  }
  return VectorFieldC2::make(BivarPoly::z() + BivarPoly::w() * p,
                             lambda * BivarPoly::w() + BivarPoly::w() * q);
}

const Complex kExpFourPi = std::exp(4.0 * kPi);

}  // namespace

TEST_CASE("frame along the axis of a linear field is constant") {
  const auto frame = build_frame(testing::linear_field(0.5), testing::axis_loop(), 64);
  for (double s : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    const Point n = frame.normal(s);
    CHECK(std::abs(n[0]) < 1e-12);
    CHECK(std::abs(n[1] - 1.0) < 1e-12);
    const Point dn = frame.normal_derivative(s);
    CHECK(std::abs(dn[0]) + std::abs(dn[1]) < 1e-10);
  }
  // The raw orthogonal normal (0, exp(-2 pi i s)) turns once; the gauge absorbs it.
  CHECK(std::abs(frame.diagnostics().winding) == 1);
}

TEST_CASE("frame along the cubic field's leaf") {
  const auto frame = build_frame(testing::cubic_field(), testing::cubic_loop(), 256);
  const auto& d = frame.diagnostics();
  CHECK(d.min_transversality >= 0.1);
  CHECK(d.max_leaf_defect < 1e-12);
  CHECK(d.closure_error < 1e-12);
  const Point b0 = frame.base(0.0), b1 = frame.base(1.0);
  CHECK(std::abs(b0[0] - b1[0]) + std::abs(b0[1] - b1[1]) < 1e-12);
}

TEST_CASE("frame construction errors") {
  const auto field = testing::cubic_field();
  // z = t - 1, w = 0 passes through the singular point at the origin.
  const LoopSpec through_origin{
      1.0, Orientation::ccw, {testing::laurent({{1, 1.0}, {0, -1.0}}), RationalFunc1()}};
  CHECK(kind_of([&] { build_frame(field, through_origin, 64); }) == ErrorKind::kSingularPoint);

  HolonomyOptions strict;
  strict.transversality_floor = 10.0;
  CHECK(kind_of([&] { build_frame(field, testing::cubic_loop(), 64, strict); }) ==
        ErrorKind::kTransversality);

  const LoopSpec diagonal{1.0, Orientation::ccw,
                          {testing::laurent({{1, 1.0}}), testing::laurent({{1, 1.0}})}};
  CHECK(kind_of([&] { build_frame(testing::linear_field(0.5), diagonal, 64); }) ==
        ErrorKind::kLeafMismatch);
  CHECK(kind_of([&] { build_frame(field, testing::cubic_loop(), 4); }) ==
        ErrorKind::kInvalidArgument);
}

TEST_CASE("lift along the linear model follows the closed form") {
  const auto frame = build_frame(testing::linear_field(0.5), testing::axis_loop(), 64);
  std::vector<LiftSample> trace;
  const Complex c0 = 1e-3;
  const LiftResult r = lift_loop(frame, c0, {}, &trace);
  CHECK(std::abs(r.value + 1e-3) < 1e-9);
  REQUIRE(trace.size() > 2);
  CHECK(trace.front().s == 0.0);
  CHECK(trace.back().s == 1.0);
  // w(s) = c0 exp(2 pi i lambda s) solves w' = lambda w along z = exp(2 pi i s).
  for (const auto& sample : trace) {
    CHECK(std::abs(sample.c - c0 * std::exp(I * kPi * sample.s)) < 1e-12);
  }
}

TEST_CASE("lift of the base point closes up") {
  const auto frame = build_frame(testing::cubic_field(), testing::cubic_loop(), 128);
  CHECK(std::abs(lift_loop(frame, 0.0).value) < 1e-8);
}

TEST_CASE("lifts along the cubic field's leaf") {
  const auto cw = build_frame(testing::cubic_field(), testing::cubic_loop(Orientation::cw), 256);
  const LiftResult r = lift_loop(cw, 1e-6);
  CHECK(std::abs(std::abs(r.value) / (std::exp(-4.0 * kPi) * 1e-6) - 1.0) < 1e-2);

  const auto ccw = build_frame(testing::cubic_field(), testing::cubic_loop(Orientation::ccw), 256);
  CHECK(kind_of([&] { lift_loop(ccw, 1e-6); }) == ErrorKind::kTubeExit);
  CHECK(kind_of([&] { lift_loop(ccw, 0.5); }) == ErrorKind::kTubeExit);
}

TEST_CASE("variational derivative") {
  const auto linear = build_frame(testing::linear_field(0.5), testing::axis_loop(), 64);
  CHECK(std::abs(holonomy_derivative_variational(linear).derivative + 1.0) < 1e-8);

  const auto field = testing::cubic_field();
  for (Orientation o : {Orientation::ccw, Orientation::cw}) {
    const auto frame = build_frame(field, testing::cubic_loop(o), 256);
    const auto result = holonomy_derivative_variational(frame);
    const Complex expected = o == Orientation::ccw ? kExpFourPi : 1.0 / kExpFourPi;
    CHECK(rel(result.derivative, expected) < 1e-6);
    CHECK(result.method == HolonomyMethod::variational);
    CHECK(result.diagnostics.closure_error < 1e-8);
  }

  const auto rotation = VectorFieldC2::make(BivarPoly::w(), -BivarPoly::z());
  const auto frame = build_frame(rotation, testing::cubic_loop(), 128);
  CHECK(std::abs(holonomy_derivative_variational(frame).derivative - 1.0) < 1e-8);
}

TEST_CASE("linear closed form exp(2 pi i lambda)") {
  for (Complex lambda : {Complex(0.5), Complex(1.0 / 3.0), 0.25 * I}) {
    const auto frame = build_frame(testing::linear_field(lambda), testing::axis_loop(), 64);
    const Complex expected = std::exp(2.0 * kPi * I * lambda);
    CHECK(rel(holonomy_derivative_variational(frame).derivative, expected) < 1e-6);
    CHECK(rel(holonomy_derivative_fd(frame, 1e-5).derivative, expected) < 1e-6);
  }
}

TEST_CASE("finite differences") {
  const auto linear = build_frame(testing::linear_field(0.5), testing::axis_loop(), 64);
  const auto r = holonomy_derivative_fd(linear, 1e-5);
  CHECK(std::abs(r.derivative + 1.0) < 1e-6);
  CHECK(r.method == HolonomyMethod::finite_difference);
  REQUIRE(r.endpoint_offsets.size() == 4);

  const auto frame = build_frame(testing::cubic_field(), testing::cubic_loop(Orientation::cw), 256);
  const auto fd = holonomy_derivative_fd(frame, 1e-4);
  const auto var = holonomy_derivative_variational(frame);
  CHECK(rel(fd.derivative, var.derivative) < 1e-4);
  // The holonomy is odd to first order: lift(eps) ~ -lift(-eps).
  const auto& offsets = fd.endpoint_offsets;
  for (std::size_t k = 0; k + 1 < offsets.size(); k += 2) {
    REQUIRE(offsets[k].first == -offsets[k + 1].first);
    CHECK(std::abs(offsets[k].second + offsets[k + 1].second) <
          1e-2 * std::abs(offsets[k].second));
  }

  HolonomyOptions strict;
  strict.fd_consistency_tol = 1e-15;
  CHECK(kind_of([&] { holonomy_derivative_fd(frame, 1e-4, strict); }) ==
        ErrorKind::kIllConditioned);
  CHECK(kind_of([&] { holonomy_derivative_fd(frame, 0.0); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("chart independence") {
  const auto field = testing::cubic_field();
  const auto loop = testing::cubic_loop(Orientation::cw);
  const Complex base = holonomy_derivative_variational(build_frame(field, loop, 256)).derivative;
  const Complex doubled = holonomy_derivative_variational(build_frame(field, loop, 512)).derivative;
  CHECK(rel(doubled, base) < 1e-8);
  HolonomyOptions twisted;
  twisted.phase_twist = 0.7;
  const auto twisted_frame = build_frame(field, loop, 256, twisted);
  CHECK(rel(holonomy_derivative_variational(twisted_frame, twisted).derivative, base) < 1e-8);
  const Point n0 = build_frame(field, loop, 256).normal(0.2);
  const Point n1 = twisted_frame.normal(0.2);
  CHECK(std::abs(n0[0] - n1[0]) + std::abs(n0[1] - n1[1]) > 1e-2);

  const auto lin = testing::linear_field(1.0 / 3.0);
  const Complex lb = holonomy_derivative_variational(build_frame(lin, testing::axis_loop(), 64)).derivative;
  const Complex lt = holonomy_derivative_variational(
                         build_frame(lin, testing::axis_loop(), 64, twisted), twisted)
                         .derivative;
  CHECK(rel(lt, lb) < 1e-8);
}

TEST_CASE("polyline fallback") {
  const auto field = testing::cubic_field();
  const auto analytic = analytic_curve(testing::cubic_loop(Orientation::cw));
  std::vector<Point> points;
  const int n = 512;
  for (int k = 0; k < n; ++k) points.push_back(analytic->point(static_cast<double>(k) / n));
  HolonomyOptions loose;
  loose.leaf_tol = 1e-4;
  loose.closure_tol = 1e-6;
  const auto frame = build_frame(field, spline_curve(points), 256, loose);
  const Complex expected = 1.0 / kExpFourPi;
  CHECK(rel(holonomy_derivative_variational(frame, loose).derivative, expected) < 1e-4);
  CHECK_THROWS_AS(spline_curve({points[0], points[1], points[2]}), Error);
}

TEST_CASE("property: orientation reciprocity") {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> c(-0.5, 0.5);
  for (int n = 0; n < 100; ++n) {
    const auto field = perturbed_linear(rng, Complex(c(rng), c(rng)));
    const auto ccw = build_frame(field, testing::axis_loop(Orientation::ccw), 64);
    const auto cw = build_frame(field, testing::axis_loop(Orientation::cw), 64);
    const Complex product = holonomy_derivative_variational(ccw).derivative *
                            holonomy_derivative_variational(cw).derivative;
    CHECK(std::abs(product - 1.0) < 1e-6);
  }
}

TEST_CASE("property: the base point lifts to itself") {
  std::mt19937_64 rng(1618);
  std::uniform_real_distribution<double> c(-0.5, 0.5);
  for (int n = 0; n < 100; ++n) {
    const auto field = perturbed_linear(rng, Complex(c(rng), c(rng)));
    const auto frame = build_frame(field, testing::axis_loop(n % 2 ? Orientation::cw : Orientation::ccw), 32);
    CHECK(std::abs(lift_loop(frame, 0.0).value) < 1e-8);
  }
}
