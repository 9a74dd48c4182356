#include "holofol/report.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace holofol {

using json_io::Json;

namespace {

double relative_delta(Complex value, Complex reference) {
  return std::abs(value - reference) / std::abs(reference);
}

// Runs one pipeline stage; errors are recorded instead of propagated.
bool run_stage(AnalysisReport& report, const std::string& stage, const std::function<void()>& fn) {
  try {
    fn();
    return true;
  } catch (const Error& e) {
    report.errors.push_back({stage, e.kind(), e.what()});
  }
  return false;
}

const OrientedIntegral* integral_for(const AnalysisReport& report, Orientation o) {
  for (const auto& integral : report.alpha_integrals) {
    if (integral.orientation == o) return &integral;
  }
  return nullptr;
}

const HolonomySummary* variational_for(const AnalysisReport& report, Orientation o) {
  for (const auto& h : report.holonomy) {
    if (h.orientation == o && h.result.method == HolonomyMethod::variational) return &h;
  }
  return nullptr;
}

// |Log h'(0)|: zero exactly when h'(0) = 1.
double departure_from_identity(Complex derivative) { return std::abs(std::log(derivative)); }

Verdict decide(const AnalysisReport& report, const ReportOptions& options) {
  if (!report.errors.empty() || !report.cofactor) return Verdict::inconclusive;

  std::vector<double> departures;
  for (const auto& integral : report.alpha_integrals) {
    departures.push_back(departure_from_identity(std::exp(integral.residue)));
  }
  for (const auto& h : report.holonomy) {
    departures.push_back(departure_from_identity(h.result.derivative));
  }
  if (departures.empty()) return Verdict::inconclusive;
  const bool cycle = std::any_of(departures.begin(), departures.end(),
                                 [&](double d) { return d > options.limit_cycle_tol; });
  if (!cycle) return Verdict::not_a_limit_cycle;
  if (!report.real_points || !report.real_points->empty) return Verdict::inconclusive;
  return *report.real_points->empty ? Verdict::complex_limit_cycle_disjoint_from_real_plane
                                    : Verdict::limit_cycle_meets_real_plane;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::complex_limit_cycle_disjoint_from_real_plane:
      return "complex_limit_cycle_disjoint_from_real_plane";
    case Verdict::limit_cycle_meets_real_plane: return "limit_cycle_meets_real_plane";
    case Verdict::not_a_limit_cycle: return "not_a_limit_cycle";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

void apply_options(const Json& j, const std::string& where, ReportOptions& options) {
  using json_io::decode_int;
  using json_io::decode_number;
  if (!j.is_object()) {
    throw Error(ErrorKind::kSchema, where + ": expected an object");
  }
  auto number = [&](const char* key, double& target) {
    if (!j.contains(key)) return;
    target = decode_number(j[key], where + "/" + key);
    if (!(target > 0.0)) throw Error(ErrorKind::kSchema, where + "/" + key + ": must be positive");
  };
  auto count = [&](const char* key, int& target) {
    if (!j.contains(key)) return;
    target = decode_int(j[key], where + "/" + key);
    if (target <= 0) throw Error(ErrorKind::kSchema, where + "/" + key + ": must be positive");
  };
  number("tol", options.tol);
  number("eps", options.fd_eps);
  number("half_width", options.half_width);
  number("limit_cycle_tol", options.limit_cycle_tol);
  number("ode_rtol", options.holonomy.ode_rtol);
  number("closure_tol", options.holonomy.closure_tol);
  number("tube_radius", options.holonomy.tube_radius);
  number("transversality_floor", options.holonomy.transversality_floor);
  number("fd_consistency_tol", options.holonomy.fd_consistency_tol);
  if (j.contains("radius")) {
    double radius = 0.0;
    number("radius", radius);
    options.radius = radius;
  }
  count("samples", options.samples);
  count("grid", options.grid);
  if (j.contains("orientation")) {
    if (j["orientation"] == "both") {
      options.orientations = {Orientation::ccw, Orientation::cw};
    } else {
      options.orientations = {json_io::decode_orientation(j["orientation"], where + "/orientation")};
    }
  }
  if (j.contains("fd_orientation")) {
    options.fd_orientation = json_io::decode_orientation(j["fd_orientation"], where + "/fd_orientation");
  }
}

AnalysisInput parse_input(const Json& document) {
  json_io::check_schema(document);
  AnalysisInput input{json_io::decode_field(json_io::require(document, "field", ""), "/field"),
                      {}, {}, {}, {}};
  if (document.contains("curve")) input.curve = json_io::decode_curve(document["curve"], "/curve");
  if (document.contains("loop")) input.loop = json_io::decode_loop(document["loop"], "/loop");
  if (document.contains("options")) apply_options(document["options"], "/options", input.options);
  if (document.contains("reference")) {
    const Json& ref = document["reference"];
    ReferenceValue value;
    value.alpha_integral = json_io::decode_complex(
        json_io::require(ref, "alpha_integral", "/reference"), "/reference/alpha_integral");
    if (ref.contains("label") && ref["label"].is_string()) value.label = ref["label"];
    input.reference = value;
  }
  return input;
}

AnalysisReport run_report(const AnalysisInput& input) {
  const ReportOptions& opt = input.options;
  AnalysisReport report;
  report.field = input.field;
  report.curve = input.curve;

  if (input.curve) {
    run_stage(report, "check-invariant", [&] {
      report.lie_derivative = lie_derivative(input.field, *input.curve);
      report.cofactor = invariant_cofactor(input.field, *input.curve);
      if (!report.cofactor) {
        throw Error(ErrorKind::kLeafMismatch, "curve is not invariant under the field");
      }
    });
  }

  run_stage(report, "alpha", [&] {
    report.alpha = alpha_form(input.field);
    report.integrability_verified = verify_integrability(input.field);
    if (!*report.integrability_verified) {
      throw Error(ErrorKind::kInconsistency, "d(omega) and alpha ^ omega disagree");
    }
  });

  if (!input.loop) {
    report.errors.push_back({"integrate", ErrorKind::kInvalidArgument, "no loop supplied"});
  } else {
    LoopSpec base = *input.loop;
    if (opt.radius) base.radius = *opt.radius;
    LoopIntegralOptions loop_options;
    loop_options.cross_check_tol = opt.tol;

    for (Orientation o : opt.orientations) {
      run_stage(report, "integrate", [&] {
        LoopSpec loop = base;
        loop.orientation = o;
        const AlphaLoopIntegral result =
            loop_integral_alpha(input.field, loop, input.curve, loop_options);
        report.pulled_back_alpha = result.integrand;
        report.alpha_integrals.push_back(
            {o, result.value, result.quadrature, result.delta, result.quadrature_nodes});
      });
    }
    const auto* ccw = integral_for(report, Orientation::ccw);
    const auto* cw = integral_for(report, Orientation::cw);
    if (ccw && cw) report.antisymmetry_delta = std::abs(ccw->residue + cw->residue);

    if (input.reference && !report.alpha_integrals.empty()) {
      ReferenceCheck check;
      check.reference = *input.reference;
      check.delta = std::numeric_limits<double>::infinity();
      for (const auto& integral : report.alpha_integrals) {
        const double d = std::abs(integral.residue - input.reference->alpha_integral);
        if (d < check.delta) {
          check.delta = d;
          check.closest = integral.residue;
          check.closest_orientation = integral.orientation;
        }
      }
      check.matches = check.delta <= opt.tol;
      report.reference = check;
    }

    for (Orientation o : opt.orientations) {
      run_stage(report, "holonomy", [&] {
        LoopSpec loop = base;
        loop.orientation = o;
        const TransversalFrame frame = build_frame(input.field, loop, opt.samples, opt.holonomy);
        HolonomySummary summary{holonomy_derivative_variational(frame, opt.holonomy), o, false,
                                std::nullopt, std::nullopt};
        if (const auto* integral = integral_for(report, o)) {
          summary.alpha_delta = relative_delta(summary.result.derivative, std::exp(integral->residue));
        }
        report.holonomy.push_back(summary);
      });
    }
    const auto* var_ccw = variational_for(report, Orientation::ccw);
    const auto* var_cw = variational_for(report, Orientation::cw);
    if (var_ccw && var_cw) {
      report.reciprocity_delta =
          std::abs(var_ccw->result.derivative * var_cw->result.derivative - 1.0);
    }

    run_stage(report, "holonomy", [&] {
      // Lift in the contracting direction so the offsets stay inside the tube.
      Orientation fd_orientation = Orientation::cw;
      if (opt.fd_orientation) {
        fd_orientation = *opt.fd_orientation;
      } else if (var_ccw && std::abs(var_ccw->result.derivative) <= 1.0) {
        fd_orientation = Orientation::ccw;
      }
      LoopSpec loop = base;
      loop.orientation = fd_orientation;
      const TransversalFrame frame = build_frame(input.field, loop, opt.samples, opt.holonomy);
      HolonomySummary fd{holonomy_derivative_fd(frame, opt.fd_eps, opt.holonomy), fd_orientation,
                         false, std::nullopt, std::nullopt};
      HolonomySummary reciprocal = fd;
      reciprocal.orientation = reversed(fd_orientation);
      reciprocal.by_reciprocity = true;
      reciprocal.result.derivative = 1.0 / fd.result.derivative;
      reciprocal.result.endpoint_offsets.clear();
      for (HolonomySummary* s : {&fd, &reciprocal}) {
        if (const auto* integral = integral_for(report, s->orientation)) {
          s->alpha_delta = relative_delta(s->result.derivative, std::exp(integral->residue));
        }
        if (const auto* var = variational_for(report, s->orientation)) {
          s->variational_delta = relative_delta(s->result.derivative, var->result.derivative);
        }
      }
      report.holonomy.push_back(fd);
      report.holonomy.push_back(reciprocal);
    });
  }

  if (!input.curve) {
    report.errors.push_back({"real-points", ErrorKind::kInvalidArgument, "no curve supplied"});
  } else {
    run_stage(report, "real-points", [&] {
      const RealCurve curve = RealCurve::make(*input.curve);
      RealPointsSummary summary;
      if (curve.F.degree() <= 2) {
        const ConicVerdict verdict = conic_real_points(curve);
        summary.method = "conic";
        summary.empty = verdict.empty;
        summary.witness = verdict.witness;
        summary.exact = true;
      } else {
        const SampleVerdict verdict = sample_real_zeros(curve, opt.half_width, opt.grid);
        summary.method = "sample";
        if (verdict.found) {
          summary.empty = false;
          summary.witness = verdict.points.front();
        }
        summary.min_abs = verdict.min_abs;
      }
      report.real_points = summary;
    });
  }

  report.verdict = decide(report, opt);
  return report;
}

namespace {

Json point_json(RealPoint p) { return Json{{"z", p.z}, {"w", p.w}}; }

}  // namespace

Json to_json(const AnalysisReport& report) {
  Json out;
  out["schema"] = json_io::kSchema;
  out["field"] = json_io::encode(report.field);

  Json invariant;
  invariant["curve"] = report.curve ? json_io::encode(*report.curve) : Json(nullptr);
  invariant["lie_derivative"] =
      report.lie_derivative ? json_io::encode(*report.lie_derivative) : Json(nullptr);
  invariant["cofactor"] = report.cofactor ? json_io::encode(*report.cofactor) : Json(nullptr);
  invariant["cofactor_text"] = report.cofactor ? to_string(*report.cofactor) : "";
  out["invariant"] = invariant;

  Json alpha;
  if (report.alpha) {
    alpha["form"] = json_io::encode(*report.alpha);
    alpha["integrability_verified"] = report.integrability_verified.value_or(false);
  }
  if (report.pulled_back_alpha) alpha["pullback"] = json_io::encode(*report.pulled_back_alpha);
  out["alpha"] = alpha;

  Json integrals = Json::object();
  for (const auto& integral : report.alpha_integrals) {
    integrals[json_io::to_string(integral.orientation)] = {
        {"value", json_io::encode(integral.residue)},
        {"method", "residue"},
        {"quadrature", json_io::encode(integral.quadrature)},
        {"quadrature_nodes", integral.quadrature_nodes},
        {"residue_quadrature_delta", integral.delta},
        {"exp_value", json_io::encode(std::exp(integral.residue))}};
  }
  if (report.antisymmetry_delta) integrals["antisymmetry_delta"] = *report.antisymmetry_delta;
  out["alpha_integral"] = integrals;

  if (report.reference) {
    const ReferenceCheck& r = *report.reference;
    out["reference_check"] = {{"label", r.reference.label},
                              {"reference", json_io::encode(r.reference.alpha_integral)},
                              {"closest_computed", json_io::encode(r.closest)},
                              {"closest_orientation", json_io::to_string(r.closest_orientation)},
                              {"delta", r.delta},
                              {"matches", r.matches},
                              {"differs_from_reference", !r.matches}};
  }

  Json holonomy = Json::array();
  for (const auto& h : report.holonomy) {
    Json entry = json_io::encode(h.result);
    entry["orientation"] = json_io::to_string(h.orientation);
    entry["by_reciprocity"] = h.by_reciprocity;
    entry["alpha_delta"] = h.alpha_delta ? Json(*h.alpha_delta) : Json(nullptr);
    entry["variational_delta"] = h.variational_delta ? Json(*h.variational_delta) : Json(nullptr);
    holonomy.push_back(entry);
  }
  out["holonomy"] = {{"results", holonomy},
                     {"reciprocity_delta", report.reciprocity_delta
                                               ? Json(*report.reciprocity_delta)
                                               : Json(nullptr)}};

  if (report.real_points) {
    const RealPointsSummary& r = *report.real_points;
    Json real{{"method", r.method}, {"exact", r.exact}};
    real["verdict"] = !r.empty ? "unknown" : (*r.empty ? "empty" : "nonempty");
    real["witness"] = r.witness ? point_json(*r.witness) : Json(nullptr);
    if (r.min_abs) real["min_abs"] = *r.min_abs;
    out["real_points"] = real;
  } else {
    out["real_points"] = nullptr;
  }

  Json errors = Json::array();
  for (const auto& e : report.errors) {
    errors.push_back({{"stage", e.stage}, {"kind", to_string(e.kind)}, {"message", e.message}});
  }
  out["errors"] = errors;
  out["verdict"] = to_string(report.verdict);
  return out;
}

}  // namespace holofol
