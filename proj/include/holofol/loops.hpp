#pragma once

// Rational parametrizations of leaves, pullbacks of 1-forms to the parameter
// circle, and circle integrals by residues and by the trapezoidal rule.

#include <optional>

#include "holofol/algebra.hpp"
#include "holofol/foliation.hpp"

namespace holofol {

enum class Orientation { ccw, cw };

inline double sign(Orientation o) { return o == Orientation::ccw ? 1.0 : -1.0; }
inline Orientation reversed(Orientation o) {
  return o == Orientation::ccw ? Orientation::cw : Orientation::ccw;
}

/// t -> (z(t), w(t)).
struct RationalMapC2 {
  RationalFunc1 z;
  RationalFunc1 w;
};

/// The image of the circle |t| = radius under `map`.
struct LoopSpec {
  double radius = 1.0;
  Orientation orientation = Orientation::ccw;
  RationalMapC2 map;
};

/// dt-coefficient of map^*(form), reduced.
RationalFunc1 pullback(const RationalOneForm& form, const RationalMapC2& map);
RationalFunc1 pullback(const PolyOneForm& form, const RationalMapC2& map);

/// True iff F(z(t), w(t)) is the zero rational function.
bool on_curve_check(const RationalMapC2& map, const BivarPoly& F);

/// +-2 pi i times the residues enclosed by |t| = radius.
Complex integrate_circle_residues(const RationalFunc1& integrand, double radius,
                                  Orientation orientation,
                                  double pole_contour_tol = kPoleContourTol);

struct QuadratureEstimate {
  Complex value;
  int nodes = 0;
  double last_delta = 0.0;
};

/// Trapezoidal rule in the angle, doubling from 64 nodes until two successive
/// estimates differ by less than tol. Gives up after 2^16 nodes.
QuadratureEstimate integrate_circle_quadrature(const RationalFunc1& integrand, double radius,
                                               Orientation orientation, double tol);

struct LoopIntegralOptions {
  double cross_check_tol = 1e-9;
  double quadrature_tol = 1e-12;
  double pole_contour_tol = kPoleContourTol;
};

struct AlphaLoopIntegral {
  Complex value;  // residue path
  Complex quadrature;
  double delta = 0.0;  // |value - quadrature|
  int quadrature_nodes = 0;
  RationalFunc1 integrand;
};

/// Integral of alpha over the loop. The loop must lie on a leaf: when a curve
/// F is given, the map must parametrize F = 0 and F must be invariant;
/// otherwise the pullback of omega has to vanish identically.
/// Throws kLeafMismatch, or kInconsistency when residue and quadrature paths
/// disagree beyond cross_check_tol.
AlphaLoopIntegral loop_integral_alpha(const VectorFieldC2& field, const LoopSpec& loop,
                                      const std::optional<BivarPoly>& curve = std::nullopt,
                                      const LoopIntegralOptions& options = {});

}  // namespace holofol
