#pragma once

// Real points of real algebraic curves F(z, w) = 0: an exact decision for
// conics and a grid sampler (non-certifying) for everything else.

#include <optional>
#include <vector>

#include "holofol/algebra.hpp"

namespace holofol {

struct RealCurve {
  BivarPoly F;

  /// Throws kInvalidArgument for the zero polynomial or non-real coefficients.
  static RealCurve make(BivarPoly F);
};

struct RealPoint {
  double z = 0.0;
  double w = 0.0;
};

double evaluate_real(const RealCurve& curve, RealPoint p);

struct ConicVerdict {
  bool empty = true;
  std::optional<RealPoint> witness;
  /// True when every sign was decided in exact integer arithmetic.
  bool exact_arithmetic = false;
};

/// Exact emptiness of the real locus for total degree <= 2. Throws
/// kUnsupportedDegree otherwise.
ConicVerdict conic_real_points(const RealCurve& curve);

struct SampleVerdict {
  bool found = false;
  std::vector<RealPoint> points;  // refined zero crossings
  double min_abs = 0.0;           // smallest |F| located
  RealPoint min_location;
  /// Always false: not finding a zero on a box proves nothing.
  bool certifies_emptiness = false;
};

/// Evaluates F on a (grid + 1)^2 lattice over [-half_width, half_width]^2,
/// bisects sign changes along lattice edges and polishes local minima of |F|.
SampleVerdict sample_real_zeros(const RealCurve& curve, double half_width, int grid);

}  // namespace holofol
