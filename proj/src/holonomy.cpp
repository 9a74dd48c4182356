#include "holofol/holonomy.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>
#include <tuple>

#include "holofol/errors.hpp"
#include "holofol/ode.hpp"

namespace holofol {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
constexpr double kSingularTol = 1e-12;

// <a, b> = conj(a1) b1 + conj(a2) b2
Complex hermitian(const Point& a, const Point& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

double norm(const Point& a) { return std::sqrt(std::norm(a[0]) + std::norm(a[1])); }

bool finite(const Point& p) {
  for (const Complex& c : p) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

class AnalyticCurve final : public LoopCurve {
 public:
  explicit AnalyticCurve(const LoopSpec& loop)
      : radius_(loop.radius),
        sigma_(sign(loop.orientation)),
        z_(loop.map.z),
        w_(loop.map.w),
        dz_(loop.map.z.derivative()),
        dw_(loop.map.w.derivative()) {
    if (!(radius_ > 0.0)) {
      throw Error(ErrorKind::kInvalidArgument, "loop radius must be positive");
    }
  }

  Point point(double s) const override {
    const Complex t = parameter(s);
    return {z_(t), w_(t)};
  }

  Point tangent(double s) const override {
    const Complex t = parameter(s);
    const Complex dt = kI * kTwoPi * sigma_ * t;
    return {dz_(t) * dt, dw_(t) * dt};
  }

 private:
  Complex parameter(double s) const { return std::polar(radius_, kTwoPi * sigma_ * s); }

  double radius_;
  double sigma_;
  RationalFunc1 z_, w_, dz_, dw_;
};

// Periodic cubic spline on the uniform grid s_k = k / n, one per coordinate.
class SplineCurve final : public LoopCurve {
 public:
  explicit SplineCurve(std::vector<Point> samples) : y_(std::move(samples)) {
    const int n = static_cast<int>(y_.size());
    if (n < 4) {
      throw Error(ErrorKind::kInvalidArgument, "polyline loop needs at least 4 points");
    }
    h_ = 1.0 / n;
    m_.assign(n, Point{});
    // M_{k-1} + 4 M_k + M_{k+1} = 6 (y_{k+1} - 2 y_k + y_{k-1}) / h^2, solved
    // by Gauss-Seidel (strictly diagonally dominant, contraction factor 1/2).
    std::vector<Point> rhs(n);
    for (int k = 0; k < n; ++k) {
      for (int c = 0; c < 2; ++c) {
        rhs[k][c] = 6.0 * (y_[(k + 1) % n][c] - 2.0 * y_[k][c] + y_[(k + n - 1) % n][c]) /
                    (h_ * h_);
      }
    }
    for (int sweep = 0; sweep < 200; ++sweep) {
      double change = 0.0, size = 0.0;
      for (int k = 0; k < n; ++k) {
        for (int c = 0; c < 2; ++c) {
          const Complex next = (rhs[k][c] - m_[(k + n - 1) % n][c] - m_[(k + 1) % n][c]) / 4.0;
          change = std::max(change, std::abs(next - m_[k][c]));
          size = std::max(size, std::abs(next));
          m_[k][c] = next;
        }
      }
      if (change <= 1e-15 * std::max(1.0, size)) break;
    }
  }

  Point point(double s) const override {
    const auto [k, a, b] = locate(s);
    const int n = static_cast<int>(y_.size());
    Point p;
    for (int c = 0; c < 2; ++c) {
      const Complex m0 = m_[k][c], m1 = m_[(k + 1) % n][c];
      const Complex y0 = y_[k][c], y1 = y_[(k + 1) % n][c];
      p[c] = m0 * (a * a * a) / (6.0 * h_) + m1 * (b * b * b) / (6.0 * h_) +
             (y0 / h_ - m0 * h_ / 6.0) * a + (y1 / h_ - m1 * h_ / 6.0) * b;
    }
    return p;
  }

  Point tangent(double s) const override {
    const auto [k, a, b] = locate(s);
    const int n = static_cast<int>(y_.size());
    Point p;
    for (int c = 0; c < 2; ++c) {
      const Complex m0 = m_[k][c], m1 = m_[(k + 1) % n][c];
      const Complex y0 = y_[k][c], y1 = y_[(k + 1) % n][c];
      p[c] = -m0 * (a * a) / (2.0 * h_) + m1 * (b * b) / (2.0 * h_) - (y0 / h_ - m0 * h_ / 6.0) +
             (y1 / h_ - m1 * h_ / 6.0);
    }
    return p;
  }

 private:
  // Interval index k, distance to its right end a, distance from its left end b.
  std::tuple<int, double, double> locate(double s) const {
    const int n = static_cast<int>(y_.size());
    double u = s - std::floor(s);
    int k = static_cast<int>(u * n);
    if (k >= n) k = n - 1;
    const double left = k * h_;
    const double b = u - left;
    return {k, h_ - b, b};
  }

  std::vector<Point> y_;
  std::vector<Point> m_;
  double h_ = 0.0;
};

}  // namespace

std::shared_ptr<const LoopCurve> analytic_curve(const LoopSpec& loop) {
  return std::make_shared<AnalyticCurve>(loop);
}

std::shared_ptr<const LoopCurve> spline_curve(std::vector<Point> samples) {
  return std::make_shared<SplineCurve>(std::move(samples));
}

// P, Q and their first partials, evaluated together.
struct TransversalFrame::Jet {
  BivarPoly P, Q, Pz, Pw, Qz, Qw;

  explicit Jet(const VectorFieldC2& f)
      : P(f.P),
        Q(f.Q),
        Pz(partial_derivative(f.P, Var::z)),
        Pw(partial_derivative(f.P, Var::w)),
        Qz(partial_derivative(f.Q, Var::z)),
        Qw(partial_derivative(f.Q, Var::w)) {}
};

namespace {

struct RawNormal {
  Complex P, Q;
  Point unit;        // u / |u|, u = (-conj Q, conj P)
  Point unit_deriv;  // d/ds of unit
  double field_norm;
};

template <class JetT>
RawNormal raw_normal(const JetT& jet, const Point& b, const Point& db) {
  RawNormal r;
  r.P = jet.P(b[0], b[1]);
  r.Q = jet.Q(b[0], b[1]);
  const Complex dP = jet.Pz(b[0], b[1]) * db[0] + jet.Pw(b[0], b[1]) * db[1];
  const Complex dQ = jet.Qz(b[0], b[1]) * db[0] + jet.Qw(b[0], b[1]) * db[1];
  const Point u{-std::conj(r.Q), std::conj(r.P)};
  const Point du{-std::conj(dQ), std::conj(dP)};
  r.field_norm = norm(u);
  const double len = r.field_norm;
  const double radial = hermitian(u, du).real() / (len * len * len);
  for (int c = 0; c < 2; ++c) {
    r.unit[c] = u[c] / len;
    r.unit_deriv[c] = du[c] / len - u[c] * radial;
  }
  return r;
}

}  // namespace

std::pair<double, double> TransversalFrame::gauge(double s) const {
  double phase = kTwoPi * winding_ * s - gauge_offset_;
  double rate = kTwoPi * winding_;
  for (const Mode& mode : modes_) {
    const Complex e = std::polar(1.0, kTwoPi * mode.m * s);
    phase += 2.0 * (mode.coeff * e / (kI * kTwoPi * static_cast<double>(mode.m))).real();
    rate += 2.0 * (mode.coeff * e).real();
  }
  phase += phase_twist_ * std::sin(kTwoPi * s);
  rate += phase_twist_ * kTwoPi * std::cos(kTwoPi * s);
  return {phase, rate};
}

FramePoint TransversalFrame::at(double s) const {
  FramePoint fp;
  fp.base = curve_->point(s);
  fp.base_tangent = curve_->tangent(s);
  const RawNormal raw = raw_normal(*jet_, fp.base, fp.base_tangent);
  const auto [phase, rate] = gauge(s);
  const Complex rot = std::polar(1.0, phase);
  for (int c = 0; c < 2; ++c) {
    fp.normal[c] = rot * raw.unit[c];
    fp.normal_derivative[c] = rot * (kI * rate * raw.unit[c] + raw.unit_deriv[c]);
  }
  return fp;
}

TransversalFrame build_frame(const VectorFieldC2& field, const LoopSpec& loop, int samples,
                             const HolonomyOptions& options) {
  return build_frame(field, analytic_curve(loop), samples, options);
}

TransversalFrame build_frame(const VectorFieldC2& field, std::shared_ptr<const LoopCurve> curve,
                             int samples, const HolonomyOptions& options) {
  if (samples < 8) {
    throw Error(ErrorKind::kInvalidArgument, "a frame needs at least 8 samples");
  }
  TransversalFrame frame;
  frame.field_ = std::make_shared<const VectorFieldC2>(field);
  frame.jet_ = std::make_shared<const TransversalFrame::Jet>(field);
  frame.curve_ = std::move(curve);
  frame.phase_twist_ = options.phase_twist;

  FrameDiagnostics& diag = frame.diagnostics_;
  diag.samples = samples;
  diag.min_transversality = std::numeric_limits<double>::infinity();

  // Parallel-transport rate -Im<u, u'> of the raw unit normal at each sample.
  std::vector<double> rate(samples);
  for (int k = 0; k < samples; ++k) {
    const double s = static_cast<double>(k) / samples;
    const Point b = frame.curve_->point(s);
    const Point db = frame.curve_->tangent(s);
    if (!finite(b) || !finite(db)) {
      std::ostringstream os;
      os << "loop parametrization is not finite at s = " << s;
      throw Error(ErrorKind::kContourCollision, os.str());
    }
    const RawNormal raw = raw_normal(*frame.jet_, b, db);
    if (raw.field_norm < kSingularTol) {
      std::ostringstream os;
      os << "vector field vanishes on the loop at s = " << s << ", point (" << b[0] << ", "
         << b[1] << ")";
      throw Error(ErrorKind::kSingularPoint, os.str());
    }
    // omega_b(n) = -Q n1 + P n2 = |V| for the Hermitian normal.
    if (raw.field_norm < options.transversality_floor) {
      std::ostringstream os;
      os << "transversality " << raw.field_norm << " below floor at s = " << s;
      throw Error(ErrorKind::kTransversality, os.str());
    }
    const double speed = norm(db);
    if (speed > 0.0) {
      const double defect = std::abs(-raw.Q * db[0] + raw.P * db[1]) / (raw.field_norm * speed);
      diag.max_leaf_defect = std::max(diag.max_leaf_defect, defect);
      if (defect > options.leaf_tol) {
        std::ostringstream os;
        os << "loop leaves the leaf at s = " << s << " (tangency defect " << defect << ")";
        throw Error(ErrorKind::kLeafMismatch, os.str());
      }
    }
    rate[k] = -hermitian(raw.unit, raw.unit_deriv).imag();
  }

  // Fourier modes of the transport rate; the mean is the total phase turned
  // over the loop.
  Complex mean{};
  for (double r : rate) mean += r;
  mean /= static_cast<double>(samples);
  const double total = mean.real();
  frame.winding_ = static_cast<int>(std::lround(total / kTwoPi));
  diag.winding = frame.winding_;
  diag.phase_mismatch = total - kTwoPi * frame.winding_;

  std::vector<TransversalFrame::Mode> modes;
  double largest = std::abs(total);
  for (int m = 1; m < samples / 2; ++m) {
    Complex coeff{};
    for (int k = 0; k < samples; ++k) {
      coeff += rate[k] * std::polar(1.0, -kTwoPi * m * k / samples);
    }
    coeff /= static_cast<double>(samples);
    largest = std::max(largest, std::abs(coeff));
    modes.push_back({m, coeff});
  }
  std::erase_if(modes, [&](const auto& mode) { return std::abs(mode.coeff) <= 1e-15 * largest; });
  frame.modes_ = std::move(modes);
  frame.gauge_offset_ = 0.0;
  frame.gauge_offset_ = frame.gauge(0.0).first;

  Point previous = frame.at(0.0).normal;
  const Point first = previous;
  for (int k = 1; k <= samples; ++k) {
    const double s = static_cast<double>(k) / samples;
    const FramePoint fp = frame.at(s);
    const Complex overlap = hermitian(previous, fp.normal);
    if (overlap.real() <= 0.0) {
      throw Error(ErrorKind::kInvalidArgument, "frame samples too coarse for phase continuation");
    }
    diag.max_phase_step = std::max(diag.max_phase_step, std::abs(std::arg(overlap)));
    const Complex P = frame.jet_->P(fp.base[0], fp.base[1]);
    const Complex Q = frame.jet_->Q(fp.base[0], fp.base[1]);
    diag.min_transversality =
        std::min(diag.min_transversality, std::abs(-Q * fp.normal[0] + P * fp.normal[1]));
    previous = fp.normal;
  }
  const FramePoint start = frame.at(0.0);
  const FramePoint end = frame.at(1.0);
  diag.closure_error = std::abs(end.base[0] - start.base[0]) +
                       std::abs(end.base[1] - start.base[1]) +
                       std::abs(end.normal[0] - first[0]) + std::abs(end.normal[1] - first[1]);
  return frame;
}

LiftResult lift_loop(const TransversalFrame& frame, Complex c0, const HolonomyOptions& options,
                     std::vector<LiftSample>* trace) {
  if (std::abs(c0) > options.tube_radius) {
    throw Error(ErrorKind::kTubeExit, "initial offset lies outside the tube");
  }
  const VectorFieldC2& field = frame.field();
  auto rhs = [&](double s, Complex c) {
    const FramePoint fp = frame.at(s);
    const Complex x0 = fp.base[0] + c * fp.normal[0];
    const Complex x1 = fp.base[1] + c * fp.normal[1];
    const Complex A = -field.Q(x0, x1);
    const Complex B = field.P(x0, x1);
    const Complex transversal = A * fp.normal[0] + B * fp.normal[1];
    if (std::abs(transversal) < options.transversality_floor) {
      std::ostringstream os;
      os << "fiber became tangent to the foliation at s = " << s;
      throw Error(ErrorKind::kTransversality, os.str());
    }
    const Complex along = A * (fp.base_tangent[0] + c * fp.normal_derivative[0]) +
                          B * (fp.base_tangent[1] + c * fp.normal_derivative[1]);
    return -along / transversal;
  };
  auto on_step = [&](double s, Complex c) {
    if (std::abs(c) > options.tube_radius) {
      std::ostringstream os;
      os << "lifted path left the tube (|c| = " << std::abs(c) << ") at s = " << s;
      throw Error(ErrorKind::kTubeExit, os.str());
    }
    if (trace) trace->push_back({s, c});
  };
  OdeOptions ode;
  ode.rtol = options.ode_rtol;
  ode.atol = options.ode_rtol * 1e-6 * (c0 != Complex{} ? std::abs(c0) : 1.0);
  OdeStats stats;
  const Complex c1 = integrate_dopri45(rhs, 0.0, 1.0, c0, ode, stats, on_step);
  return {c1, stats.accepted, stats.rejected};
}

HolonomyResult holonomy_derivative_variational(const TransversalFrame& frame,
                                               const HolonomyOptions& options) {
  const VectorFieldC2& field = frame.field();
  const BivarPoly Az = -partial_derivative(field.Q, Var::z);
  const BivarPoly Aw = -partial_derivative(field.Q, Var::w);
  const BivarPoly Bz = partial_derivative(field.P, Var::z);
  const BivarPoly Bw = partial_derivative(field.P, Var::w);

  // mu(s) = -[(D_n omega)(base') + omega(n')] / omega(n), all at the base point.
  auto mu = [&](double s) {
    const FramePoint fp = frame.at(s);
    const Complex z = fp.base[0], w = fp.base[1];
    const Point& n = fp.normal;
    const Complex A = -field.Q(z, w), B = field.P(z, w);
    const Complex dA = Az(z, w) * n[0] + Aw(z, w) * n[1];
    const Complex dB = Bz(z, w) * n[0] + Bw(z, w) * n[1];
    const Complex varied = dA * fp.base_tangent[0] + dB * fp.base_tangent[1];
    const Complex turning = A * fp.normal_derivative[0] + B * fp.normal_derivative[1];
    const Complex transversal = A * n[0] + B * n[1];
    if (std::abs(transversal) < options.transversality_floor) {
      throw Error(ErrorKind::kTransversality, "frame normal tangent to the foliation");
    }
    return -(varied + turning) / transversal;
  };

  // mu is smooth and 1-periodic, so the trapezoidal rule converges spectrally.
  constexpr int kMaxNodes = 1 << 16;
  int nodes = 64;
  while (nodes < frame.diagnostics().samples) nodes *= 2;
  auto rule = [&](int n) {
    Complex sum{};
    for (int k = 0; k < n; ++k) sum += mu(static_cast<double>(k) / n);
    return sum / static_cast<double>(n);
  };
  Complex previous = rule(nodes);
  long evaluations = nodes;
  double change = 0.0;
  for (nodes *= 2; nodes <= kMaxNodes; nodes *= 2) {
    // Reuse the previous nodes: only the odd ones are new.
    Complex odd{};
    for (int k = 1; k < nodes; k += 2) odd += mu(static_cast<double>(k) / nodes);
    evaluations += nodes / 2;
    const Complex current = 0.5 * previous + odd / static_cast<double>(nodes);
    change = std::abs(current - previous);
    previous = current;
    if (change <= options.ode_rtol * std::max(1.0, std::abs(current))) {
      HolonomyResult result;
      result.method = HolonomyMethod::variational;
      result.derivative = std::exp(current);
      result.diagnostics.steps = evaluations;
      result.diagnostics.closure_error = frame.diagnostics().closure_error;
      result.diagnostics.consistency = change;
      if (result.diagnostics.closure_error >= options.closure_tol) {
        throw Error(ErrorKind::kInconsistency, "transversal frame does not close up");
      }
      return result;
    }
  }
  std::ostringstream os;
  os << "variational integral did not converge (last change " << change << ")";
  throw Error(ErrorKind::kConvergenceFailure, os.str());
}

HolonomyResult holonomy_derivative_fd(const TransversalFrame& frame, double eps,
                                      const HolonomyOptions& options) {
  if (!(eps > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "finite-difference step must be positive");
  }
  const std::array<double, 4> offsets{eps, -eps, eps / 2, -eps / 2};
  std::array<std::future<LiftResult>, 4> jobs;
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    jobs[k] = std::async(std::launch::async, [&frame, &options, c0 = offsets[k]] {
      return lift_loop(frame, c0, options);
    });
  }
  const LiftResult at_zero = lift_loop(frame, 0.0, options);
  std::array<LiftResult, 4> lifts;
  for (std::size_t k = 0; k < jobs.size(); ++k) lifts[k] = jobs[k].get();

  const Complex wide = (lifts[0].value - lifts[1].value) / (2.0 * eps);
  const Complex narrow = (lifts[2].value - lifts[3].value) / eps;
  const Complex extrapolated = (4.0 * narrow - wide) / 3.0;

  HolonomyResult result;
  result.method = HolonomyMethod::finite_difference;
  result.derivative = extrapolated;
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    result.endpoint_offsets.emplace_back(offsets[k], lifts[k].value);
    result.diagnostics.steps += lifts[k].steps;
    result.diagnostics.rejected_steps += lifts[k].rejected_steps;
  }
  result.diagnostics.closure_error =
      std::max(frame.diagnostics().closure_error, std::abs(at_zero.value));
  result.diagnostics.consistency = std::abs(wide - narrow) / std::abs(extrapolated);
  if (result.diagnostics.closure_error >= options.closure_tol) {
    throw Error(ErrorKind::kInconsistency, "lift of the base point does not close up");
  }
  if (!(result.diagnostics.consistency <= options.fd_consistency_tol)) {
    std::ostringstream os;
    os << "central differences at eps and eps/2 disagree by "
       << result.diagnostics.consistency << " (relative)";
    throw Error(ErrorKind::kIllConditioned, os.str());
  }
  return result;
}

}  // namespace holofol
