#include "holofol/realgeom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "holofol/errors.hpp"

namespace holofol {

RealCurve RealCurve::make(BivarPoly F) {
  if (F.is_zero()) {
    throw Error(ErrorKind::kInvalidArgument, "real curve given by the zero polynomial");
  }
  if (!F.is_real()) {
    throw Error(ErrorKind::kInvalidArgument, "real curve has non-real coefficients");
  }
  return {std::move(F)};
}

double evaluate_real(const RealCurve& curve, RealPoint p) {
  return curve.F(p.z, p.w).real();
}

namespace {

using Int = __int128;

// Conic coefficients: F = a w^2 + (b0 + b1 z) w + (c0 + c1 z + c2 z^2).
template <class T>
struct Conic {
  T a, b0, b1, c0, c1, c2;
};

// Sign oracle for one number type. Exact integers compare against zero;
// doubles use a tolerance scaled by the coefficient size and the polynomial
// degree of the expression in the coefficients.
struct ExactSign {
  int operator()(Int x, int /*degree*/) const { return (x > 0) - (x < 0); }
};

struct ToleranceSign {
  double scale;
  int operator()(double x, int degree) const {
    const double tol = 1e-12 * std::pow(std::max(1.0, scale), degree);
    return std::abs(x) <= tol ? 0 : (x > 0 ? 1 : -1);
  }
};

enum class Branch {
  empty,
  quadratic_in_w,  // a != 0, discriminant nonnegative somewhere
  linear_in_z,     // a = 0, b(z) not identically zero with b1 != 0
  constant_b,      // a = 0, b = b0 != 0
  quadratic_in_z,  // a = b = 0, c has a real root (c2 != 0)
  linear_c,        // a = b = 0, c = c0 + c1 z with c1 != 0
};

template <class T, class Sign>
Branch decide(const Conic<T>& q, Sign sgn) {
  if (sgn(q.a, 1) != 0) {
    // D(z) = b(z)^2 - 4 a c(z) = d2 z^2 + d1 z + d0
    const T d2 = q.b1 * q.b1 - T(4) * q.a * q.c2;
    const T d1 = T(2) * q.b0 * q.b1 - T(4) * q.a * q.c1;
    const T d0 = q.b0 * q.b0 - T(4) * q.a * q.c0;
    const int s2 = sgn(d2, 2);
    if (s2 > 0) return Branch::quadratic_in_w;
    if (s2 == 0) {
      return (sgn(d1, 2) != 0 || sgn(d0, 2) >= 0) ? Branch::quadratic_in_w : Branch::empty;
    }
    // max of D is d0 - d1^2 / (4 d2) >= 0  <=>  4 d2 d0 - d1^2 <= 0 (d2 < 0)
    return sgn(T(4) * d2 * d0 - d1 * d1, 4) <= 0 ? Branch::quadratic_in_w : Branch::empty;
  }
  if (sgn(q.b1, 1) != 0) return Branch::linear_in_z;
  if (sgn(q.b0, 1) != 0) return Branch::constant_b;
  if (sgn(q.c2, 1) != 0) {
    return sgn(q.c1 * q.c1 - T(4) * q.c2 * q.c0, 2) >= 0 ? Branch::quadratic_in_z : Branch::empty;
  }
  if (sgn(q.c1, 1) != 0) return Branch::linear_c;
  return Branch::empty;  // nonzero constant
}

// Writes x = m * 2^e with m odd (or x = 0). Returns false for non-finite x.
bool dyadic(double x, long long& mantissa, int& exponent) {
  if (!std::isfinite(x)) return false;
  if (x == 0.0) {
    mantissa = 0;
    exponent = 0;
    return true;
  }
  int e = 0;
  const double f = std::frexp(x, &e);
  mantissa = static_cast<long long>(std::ldexp(f, 53));
  exponent = e - 53;
  while ((mantissa & 1) == 0) {
    mantissa /= 2;
    ++exponent;
  }
  return true;
}

// Common power-of-two scaling to integers below 2^24, so that degree-4
// expressions in the coefficients stay far inside 128 bits.
std::optional<Conic<Int>> exact_form(const Conic<double>& q) {
  const std::array<double, 6> values{q.a, q.b0, q.b1, q.c0, q.c1, q.c2};
  std::array<long long, 6> m{};
  std::array<int, 6> e{};
  int lowest = std::numeric_limits<int>::max();
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!dyadic(values[k], m[k], e[k])) return std::nullopt;
    if (m[k] != 0) lowest = std::min(lowest, e[k]);
  }
  std::array<Int, 6> ints{};
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (m[k] == 0) continue;
    const int shift = e[k] - lowest;
    if (shift > 24) return std::nullopt;
    const Int v = static_cast<Int>(m[k]) << shift;
    if (v >= (Int{1} << 24) || v <= -(Int{1} << 24)) return std::nullopt;
    ints[k] = v;
  }
  return Conic<Int>{ints[0], ints[1], ints[2], ints[3], ints[4], ints[5]};
}

RealPoint witness_for(Branch branch, const Conic<double>& q) {
  auto b = [&](double z) { return q.b0 + q.b1 * z; };
  auto c = [&](double z) { return q.c0 + q.c1 * z + q.c2 * z * z; };
  switch (branch) {
    case Branch::quadratic_in_w: {
      const double d2 = q.b1 * q.b1 - 4 * q.a * q.c2;
      const double d1 = 2 * q.b0 * q.b1 - 4 * q.a * q.c1;
      const double d0 = q.b0 * q.b0 - 4 * q.a * q.c0;
      auto D = [&](double z) { return (d2 * z + d1) * z + d0; };
      double z = 0.0;
      if (d2 < 0.0) {
        z = -d1 / (2 * d2);
      } else if (d2 > 0.0) {
        const double vertex = -d1 / (2 * d2);
        z = vertex + std::sqrt(std::max(0.0, -D(vertex)) / d2) + 1.0;
      } else if (d1 != 0.0) {
        z = (1.0 - d0) / d1;
      }
      const double disc = std::max(0.0, D(z));
      const double bz = b(z), cz = c(z);
      // Stable pair of roots of a w^2 + b w + c.
      const double half = -0.5 * (bz + std::copysign(std::sqrt(disc), bz));
      if (half == 0.0) return {z, 0.0};
      const double w1 = half / q.a, w2 = cz / half;
      auto residual = [&](double w) { return std::abs((q.a * w + bz) * w + cz); };
      return {z, residual(w1) <= residual(w2) ? w1 : w2};
    }
    case Branch::linear_in_z: {
      const double z = (1.0 - q.b0) / q.b1;  // b(z) = 1
      return {z, -c(z) / b(z)};
    }
    case Branch::constant_b:
      return {0.0, -c(0.0) / q.b0};
    case Branch::quadratic_in_z: {
      const double disc = std::max(0.0, q.c1 * q.c1 - 4 * q.c2 * q.c0);
      const double root = (-q.c1 - std::copysign(std::sqrt(disc), q.c1 == 0 ? 1.0 : q.c1)) / 2;
      const double z = root != 0.0 ? root / q.c2 : 0.0;
      return {z, 0.0};
    }
    case Branch::linear_c:
      return {-q.c0 / q.c1, 0.0};
    case Branch::empty:
      break;
  }
  return {};
}

}  // namespace

ConicVerdict conic_real_points(const RealCurve& curve) {
  const BivarPoly& F = curve.F;
  if (F.degree() > 2) {
    throw Error(ErrorKind::kUnsupportedDegree,
                "exact real-point decision is limited to total degree 2");
  }
  const Conic<double> q{F.coeff(0, 2).real(), F.coeff(0, 1).real(), F.coeff(1, 1).real(),
                        F.coeff(0, 0).real(), F.coeff(1, 0).real(), F.coeff(2, 0).real()};

  ConicVerdict verdict;
  Branch branch;
  if (const auto exact = exact_form(q)) {
    branch = decide(*exact, ExactSign{});
    verdict.exact_arithmetic = true;
  } else {
    branch = decide(q, ToleranceSign{F.max_abs_coeff()});
  }
  verdict.empty = branch == Branch::empty;
  if (!verdict.empty) verdict.witness = witness_for(branch, q);
  return verdict;
}

namespace {

// Minimizes |F| over a box around `start` by alternating golden-section
// searches along each axis.
RealPoint polish_minimum(const RealCurve& curve, RealPoint start, double radius) {
  constexpr double kGolden = 0.6180339887498949;
  RealPoint p = start;
  auto value = [&](RealPoint q) { return std::abs(evaluate_real(curve, q)); };
  for (int round = 0; round < 4; ++round) {
    for (int axis = 0; axis < 2; ++axis) {
      double& coord = axis == 0 ? p.z : p.w;
      const double centre = coord;
      double lo = centre - radius, hi = centre + radius;
      auto at = [&](double x) {
        RealPoint q = p;
        (axis == 0 ? q.z : q.w) = x;
        return value(q);
      };
      double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
      double f1 = at(x1), f2 = at(x2);
      for (int it = 0; it < 100 && hi - lo > 1e-14 * std::max(1.0, std::abs(centre)); ++it) {
        if (f1 <= f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - kGolden * (hi - lo);
          f1 = at(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + kGolden * (hi - lo);
          f2 = at(x2);
        }
      }
      const double best = f1 <= f2 ? x1 : x2;
      if (at(best) < at(centre)) coord = best;
    }
  }
  return p;
}

}  // namespace

SampleVerdict sample_real_zeros(const RealCurve& curve, double half_width, int grid) {
  if (!(half_width > 0.0) || grid < 1) {
    throw Error(ErrorKind::kInvalidArgument, "sampling box and grid must be positive");
  }
  constexpr std::size_t kMaxPoints = 4096;
  constexpr std::size_t kMaxPolished = 64;
  const int n = grid + 1;
  const double step = 2.0 * half_width / grid;
  auto coord = [&](int k) { return -half_width + 2.0 * half_width * k / grid; };

  std::vector<double> values(static_cast<std::size_t>(n) * n);
  auto at = [&](int i, int j) -> double& { return values[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) at(i, j) = evaluate_real(curve, {coord(i), coord(j)});
  }

  SampleVerdict out;
  auto add_point = [&](RealPoint p) {
    if (out.points.size() < kMaxPoints) out.points.push_back(p);
  };
  auto bisect = [&](RealPoint lo, RealPoint hi, double f_lo) {
    for (int it = 0; it < 80; ++it) {
      const RealPoint mid{0.5 * (lo.z + hi.z), 0.5 * (lo.w + hi.w)};
      const double f_mid = evaluate_real(curve, mid);
      if (f_mid == 0.0) return mid;
      if ((f_mid > 0) == (f_lo > 0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    return RealPoint{0.5 * (lo.z + hi.z), 0.5 * (lo.w + hi.w)};
  };

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double f = at(i, j);
      const RealPoint p{coord(i), coord(j)};
      if (f == 0.0) {
        add_point(p);
        continue;
      }
      if (i + 1 < n && at(i + 1, j) != 0.0 && (at(i + 1, j) > 0) != (f > 0)) {
        add_point(bisect(p, {coord(i + 1), coord(j)}, f));
      }
      if (j + 1 < n && at(i, j + 1) != 0.0 && (at(i, j + 1) > 0) != (f > 0)) {
        add_point(bisect(p, {coord(i), coord(j + 1)}, f));
      }
    }
  }

  // Lattice local minima of |F|, smallest first.
  std::vector<std::pair<double, RealPoint>> minima;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double f = std::abs(at(i, j));
      bool lowest = true;
      for (int di = -1; di <= 1 && lowest; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          const int ii = i + di, jj = j + dj;
          if ((di || dj) && ii >= 0 && ii < n && jj >= 0 && jj < n && std::abs(at(ii, jj)) < f) {
            lowest = false;
            break;
          }
        }
      }
      if (lowest) minima.emplace_back(f, RealPoint{coord(i), coord(j)});
    }
  }
  std::sort(minima.begin(), minima.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  if (minima.size() > kMaxPolished) minima.resize(kMaxPolished);

  out.min_abs = std::numeric_limits<double>::infinity();
  for (const auto& [f, p] : minima) {
    const RealPoint polished = polish_minimum(curve, p, step);
    const double g = std::abs(evaluate_real(curve, polished));
    if (g < out.min_abs) {
      out.min_abs = g;
      out.min_location = polished;
    }
  }
  for (const RealPoint& p : out.points) {
    const double g = std::abs(evaluate_real(curve, p));
    if (g < out.min_abs) {
      out.min_abs = g;
      out.min_location = p;
    }
  }
  out.found = !out.points.empty();
  return out;
}

}  // namespace holofol
