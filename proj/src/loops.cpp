#include "holofol/loops.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "holofol/errors.hpp"

namespace holofol {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kFirstNodeCount = 64;
constexpr int kMaxNodeCount = 1 << 16;

RationalFunc1 compose_checked(const BivarPoly& p, const RationalMapC2& map) {
  return compose(p, map.z, map.w);
}

RationalFunc1 compose_quotient(const RationalCoeff& c, const RationalMapC2& map) {
  const RationalFunc1 den = compose_checked(c.den, map);
  if (den.is_zero()) {
    throw Error(ErrorKind::kDivisionByZero,
                "form denominator vanishes identically along the parametrization");
  }
  return compose_checked(c.num, map) / den;
}

Complex trapezoid(const RationalFunc1& f, double radius, int nodes) {
  Complex sum{};
  for (int k = 0; k < nodes; ++k) {
    const Complex t = std::polar(radius, kTwoPi * k / nodes);
    // dt = i t d(theta)
    sum += f(t) * Complex{0.0, 1.0} * t;
  }
  return sum * (kTwoPi / nodes);
}

}  // namespace

RationalFunc1 pullback(const RationalOneForm& form, const RationalMapC2& map) {
  const RationalFunc1 a = compose_quotient(form.a, map);
  const RationalFunc1 b = compose_quotient(form.b, map);
  return (a * map.z.derivative() + b * map.w.derivative()).reduced();
}

RationalFunc1 pullback(const PolyOneForm& form, const RationalMapC2& map) {
  return (compose_checked(form.A, map) * map.z.derivative() +
          compose_checked(form.B, map) * map.w.derivative())
      .reduced();
}

bool on_curve_check(const RationalMapC2& map, const BivarPoly& F) {
  return compose_checked(F, map).is_zero();
}

Complex integrate_circle_residues(const RationalFunc1& integrand, double radius,
                                  Orientation orientation, double pole_contour_tol) {
  const Complex residues = rational_residues_in_disk(integrand, radius, pole_contour_tol);
  return sign(orientation) * Complex{0.0, kTwoPi} * residues;
}

QuadratureEstimate integrate_circle_quadrature(const RationalFunc1& integrand, double radius,
                                               Orientation orientation, double tol) {
  if (!(radius > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "integration radius must be positive");
  }
  if (!(tol > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "quadrature tolerance must be positive");
  }
  Complex previous = trapezoid(integrand, radius, kFirstNodeCount);
  double delta = 0.0;
  for (int nodes = 2 * kFirstNodeCount; nodes <= kMaxNodeCount; nodes *= 2) {
    const Complex current = trapezoid(integrand, radius, nodes);
    delta = std::abs(current - previous);
    if (!std::isfinite(delta)) {
      throw Error(ErrorKind::kContourCollision, "integrand is not finite on the contour");
    }
    if (delta < tol) return {sign(orientation) * current, nodes, delta};
    previous = current;
  }
  std::ostringstream os;
  os << "trapezoidal rule did not converge to " << tol << " with " << kMaxNodeCount
     << " nodes (last change " << delta << ")";
  throw Error(ErrorKind::kConvergenceFailure, os.str());
}

AlphaLoopIntegral loop_integral_alpha(const VectorFieldC2& field, const LoopSpec& loop,
                                      const std::optional<BivarPoly>& curve,
                                      const LoopIntegralOptions& options) {
  if (curve) {
    if (!on_curve_check(loop.map, *curve)) {
      throw Error(ErrorKind::kLeafMismatch, "loop map does not parametrize the curve F = 0");
    }
    if (!invariant_cofactor(field, *curve)) {
      throw Error(ErrorKind::kLeafMismatch, "curve F = 0 is not invariant under the field");
    }
  } else if (!pullback(dual_one_form(field), loop.map).is_zero()) {
    throw Error(ErrorKind::kLeafMismatch, "loop map is not tangent to the foliation");
  }

  AlphaLoopIntegral out;
  out.integrand = pullback(alpha_form(field), loop.map);
  out.value = integrate_circle_residues(out.integrand, loop.radius, loop.orientation,
                                        options.pole_contour_tol);
  const QuadratureEstimate q = integrate_circle_quadrature(out.integrand, loop.radius,
                                                           loop.orientation,
                                                           options.quadrature_tol);
  out.quadrature = q.value;
  out.quadrature_nodes = q.nodes;
  out.delta = std::abs(out.value - out.quadrature);
  if (out.delta > options.cross_check_tol) {
    std::ostringstream os;
    os << "residue value " << out.value << " and quadrature value " << out.quadrature
       << " differ by " << out.delta;
    throw Error(ErrorKind::kInconsistency, os.str());
  }
  return out;
}

}  // namespace holofol
