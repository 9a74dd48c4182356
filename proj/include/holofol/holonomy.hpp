#pragma once

// Numerical holonomy along a loop in a leaf. Nearby leaves are followed in a
// moving family of complex lines base(s) + c * normal(s); the holonomy in the
// fiber coordinate c is estimated through its linearization (variational
// equation) and through finite differences of full nonlinear lifts.

#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "holofol/algebra.hpp"
#include "holofol/foliation.hpp"
#include "holofol/loops.hpp"

namespace holofol {

using Point = std::array<Complex, 2>;

struct HolonomyOptions {
  double ode_rtol = 1e-10;
  double closure_tol = 1e-8;
  double tube_radius = 1e-2;
  double transversality_floor = 1e-6;
  double fd_consistency_tol = 1e-3;
  /// Upper bound on |omega(base')| / (|V| |base'|) accepted as "on a leaf".
  double leaf_tol = 1e-8;
  /// Extra gauge exp(i * phase_twist * sin(2 pi s)) applied to the normal.
  double phase_twist = 0.0;
};

/// A closed curve s in [0, 1] -> C^2 with its s-derivative.
class LoopCurve {
 public:
  virtual ~LoopCurve() = default;
  virtual Point point(double s) const = 0;
  virtual Point tangent(double s) const = 0;
};

/// s -> map(radius * exp(+-2 pi i s)).
std::shared_ptr<const LoopCurve> analytic_curve(const LoopSpec& loop);

/// Periodic cubic spline through points sampled at s = k / n. Tangents are
/// only as good as the interpolant, so expect ~1e-4 accuracy downstream.
std::shared_ptr<const LoopCurve> spline_curve(std::vector<Point> samples);

struct FramePoint {
  Point base;
  Point base_tangent;
  Point normal;
  Point normal_derivative;
};

struct FrameDiagnostics {
  int samples = 0;
  double min_transversality = 0.0;  // min |omega_base(normal)| over samples
  double max_leaf_defect = 0.0;     // max |omega_base(base')| / (|V| |base'|)
  double max_phase_step = 0.0;      // largest phase jump between neighbouring samples
  double phase_mismatch = 0.0;      // phase realigned to close the frame
  int winding = 0;                  // whole turns absorbed by the realignment
  double closure_error = 0.0;       // |base(1) - base(0)| + |normal(1) - normal(0)|
};

// Unit normals Hermitian-orthogonal to the field along the loop. The phase is
// parallel-transported (<n, n'> = 0) and the residual phase at s = 1 is
// spread linearly over the loop, so normal(0) = normal(1). The gauge is a
// truncated Fourier series, which keeps normal and its derivative exactly
// consistent with each other.
class TransversalFrame {
 public:
  FramePoint at(double s) const;
  Point base(double s) const { return at(s).base; }
  Point base_tangent(double s) const { return at(s).base_tangent; }
  Point normal(double s) const { return at(s).normal; }
  Point normal_derivative(double s) const { return at(s).normal_derivative; }

  const FrameDiagnostics& diagnostics() const { return diagnostics_; }
  const VectorFieldC2& field() const { return *field_; }

 private:
  friend TransversalFrame build_frame(const VectorFieldC2&, std::shared_ptr<const LoopCurve>,
                                      int, const HolonomyOptions&);

  struct Jet;
  struct Mode {
    int m;
    Complex coeff;
  };

  std::pair<double, double> gauge(double s) const;  // (phase, phase')

  std::shared_ptr<const VectorFieldC2> field_;
  std::shared_ptr<const Jet> jet_;
  std::shared_ptr<const LoopCurve> curve_;
  std::vector<Mode> modes_;
  int winding_ = 0;
  double gauge_offset_ = 0.0;
  double phase_twist_ = 0.0;
  FrameDiagnostics diagnostics_;
};

/// Throws kSingularPoint where the field vanishes on the loop,
/// kTransversality below the floor, kLeafMismatch when the loop is not
/// tangent to the field.
TransversalFrame build_frame(const VectorFieldC2& field, const LoopSpec& loop, int samples,
                             const HolonomyOptions& options = {});
TransversalFrame build_frame(const VectorFieldC2& field, std::shared_ptr<const LoopCurve> curve,
                             int samples, const HolonomyOptions& options = {});

struct LiftSample {
  double s;
  Complex c;
};

struct LiftResult {
  Complex value;  // c(1)
  long steps = 0;
  long rejected_steps = 0;
};

/// Follows the leaf through base(0) + c0 normal(0) once around the loop and
/// returns its fiber coordinate at s = 1. Accepted steps are appended to
/// *trace when given.
LiftResult lift_loop(const TransversalFrame& frame, Complex c0,
                     const HolonomyOptions& options = {},
                     std::vector<LiftSample>* trace = nullptr);

enum class HolonomyMethod { variational, finite_difference };

struct HolonomyDiagnostics {
  long steps = 0;
  long rejected_steps = 0;
  double closure_error = 0.0;
  /// |D(eps) - D(eps/2)| / |extrapolated| for finite differences, last
  /// quadrature change for the variational path.
  double consistency = 0.0;
};

struct HolonomyResult {
  Complex derivative;
  HolonomyMethod method = HolonomyMethod::variational;
  std::vector<std::pair<Complex, Complex>> endpoint_offsets;
  HolonomyDiagnostics diagnostics;
};

/// exp of the integral of the linearized lift coefficient over the loop.
HolonomyResult holonomy_derivative_variational(const TransversalFrame& frame,
                                               const HolonomyOptions& options = {});

/// Richardson-extrapolated central differences of lift_loop at eps, eps/2.
HolonomyResult holonomy_derivative_fd(const TransversalFrame& frame, double eps,
                                      const HolonomyOptions& options = {});

}  // namespace holofol
