#pragma once

// Adaptive Dormand-Prince 5(4) integrator for a scalar complex ODE
// y'(s) = f(s, y) on a real interval.

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "holofol/errors.hpp"

namespace holofol {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-16;
  double initial_step = 1e-3;
  double min_step = 1e-12;
  long max_steps = 2'000'000;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
};

// `rhs(s, y)` returns y'. `on_step(s, y)` is called after every accepted step
// (and once at the start); it may throw to abort the integration.
template <class Rhs, class OnStep>
std::complex<double> integrate_dopri45(Rhs&& rhs, double s0, double s1, std::complex<double> y0,
                                       const OdeOptions& options, OdeStats& stats,
                                       OnStep&& on_step) {
  using C = std::complex<double>;
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  double s = s0;
  C y = y0;
  double h = std::min(options.initial_step, s1 - s0);
  C k1 = rhs(s, y);
  on_step(s, y);
  long steps = 0;
  while (s < s1) {
    if (++steps > options.max_steps) {
      throw Error(ErrorKind::kStiffness, "maximum number of integration steps exceeded");
    }
    if (s + h > s1) h = s1 - s;
    const C k2 = rhs(s + c2 * h, y + h * (a21 * k1));
    const C k3 = rhs(s + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const C k4 = rhs(s + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const C k5 = rhs(s + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const C k6 = rhs(s + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const C y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const C k7 = rhs(s + h, y_new);
    const double err =
        std::abs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
    const double scale = options.atol + options.rtol * std::max(std::abs(y), std::abs(y_new));
    const double ratio = err / scale;
    if (!std::isfinite(ratio)) {
      throw Error(ErrorKind::kStiffness, "non-finite error estimate during integration");
    }
    if (ratio <= 1.0) {
      s = (s1 - (s + h) < 1e-15) ? s1 : s + h;
      y = y_new;
      k1 = k7;
      ++stats.accepted;
      on_step(s, y);
    } else {
      ++stats.rejected;
    }
    const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
    h *= ratio <= 1.0 ? factor : std::min(factor, 1.0);
    if (s < s1 && h < options.min_step) {
      std::ostringstream os;
      os << "step size underflow at s = " << s;
      throw Error(ErrorKind::kStiffness, os.str());
    }
  }
  return y;
}

}  // namespace holofol
