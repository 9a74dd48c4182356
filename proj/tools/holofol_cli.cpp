// holofol: command-line front end for the foliation analysis pipeline.
//
// Exit codes: 0 success, 2 schema error, 3 numeric-stage error,
// 4 inconsistency between methods.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "holofol/report.hpp"

namespace {

using holofol::Error;
using holofol::ErrorKind;
using holofol::Orientation;
using holofol::json_io::Json;
namespace json_io = holofol::json_io;

constexpr int kExitOk = 0;
constexpr int kExitSchema = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitInconsistent = 4;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSchema: return kExitSchema;
    case ErrorKind::kInconsistency: return kExitInconsistent;
    default: return kExitNumeric;
  }
}

struct Flags {
  std::string input = "-";
  std::optional<double> tol;
  std::string orientation;
  std::optional<double> radius;
  std::string method;
  std::string output;
  std::string trace;
  std::optional<int> samples;
  std::optional<double> eps;
};

Json read_document(const std::string& path) {
  std::stringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::kSchema, "cannot open input file " + path);
    buffer << in.rdbuf();
  }
  try {
    Json doc = Json::parse(buffer.str());
    json_io::check_schema(doc);
    return doc;
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::kSchema, std::string("malformed JSON: ") + e.what());
  }
}

void write_output(const Flags& flags, const Json& body) {
  const std::string text = body.dump(2) + "\n";
  if (flags.output.empty() || flags.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(flags.output);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + flags.output);
  out << text;
}

// Folds command-line overrides into the document's options.
holofol::ReportOptions options_from(const Json& doc, const Flags& flags) {
  holofol::ReportOptions options;
  if (doc.contains("options")) holofol::apply_options(doc["options"], "/options", options);
  Json overrides = Json::object();
  if (flags.tol) overrides["tol"] = *flags.tol;
  if (flags.radius) overrides["radius"] = *flags.radius;
  if (flags.samples) overrides["samples"] = *flags.samples;
  if (flags.eps) overrides["eps"] = *flags.eps;
  if (!flags.orientation.empty()) overrides["orientation"] = flags.orientation;
  holofol::apply_options(overrides, "--", options);
  return options;
}

std::vector<Orientation> orientations_for(const Json& doc, const Flags& flags,
                                          const holofol::LoopSpec& loop) {
  if (!flags.orientation.empty() ||
      (doc.contains("options") && doc["options"].contains("orientation"))) {
    return options_from(doc, flags).orientations;
  }
  return {loop.orientation};
}

holofol::LoopSpec loop_from(const Json& doc, const holofol::ReportOptions& options) {
  holofol::LoopSpec loop = json_io::decode_loop(json_io::require(doc, "loop", ""), "/loop");
  if (options.radius) loop.radius = *options.radius;
  return loop;
}

int cmd_check_invariant(const Flags& flags) {
  const Json doc = read_document(flags.input);
  const auto field = json_io::decode_field(json_io::require(doc, "field", ""), "/field");
  const auto F = json_io::decode_curve(json_io::require(doc, "curve", ""), "/curve");
  const auto cofactor = holofol::invariant_cofactor(field, F);
  write_output(flags, Json{{"schema", json_io::kSchema},
                           {"curve", json_io::encode(F)},
                           {"lie_derivative", json_io::encode(holofol::lie_derivative(field, F))},
                           {"invariant", cofactor.has_value()},
                           {"cofactor", cofactor ? json_io::encode(*cofactor) : Json(nullptr)},
                           {"cofactor_text", cofactor ? holofol::to_string(*cofactor) : ""}});
  return kExitOk;
}

int cmd_alpha(const Flags& flags) {
  const Json doc = read_document(flags.input);
  const auto field = json_io::decode_field(json_io::require(doc, "field", ""), "/field");
  const auto alpha = holofol::alpha_form(field);
  const bool verified = holofol::verify_integrability(field);
  write_output(flags, Json{{"schema", json_io::kSchema},
                           {"alpha", json_io::encode(alpha)},
                           {"divergence", json_io::encode(holofol::divergence(field))},
                           {"integrability_verified", verified}});
  return verified ? kExitOk : kExitInconsistent;
}

int cmd_integrate(const Flags& flags) {
  const Json doc = read_document(flags.input);
  const auto options = options_from(doc, flags);
  const auto field = json_io::decode_field(json_io::require(doc, "field", ""), "/field");
  std::optional<holofol::BivarPoly> curve;
  if (doc.contains("curve")) curve = json_io::decode_curve(doc["curve"], "/curve");
  const holofol::LoopSpec base = loop_from(doc, options);

  holofol::LoopIntegralOptions loop_options;
  loop_options.cross_check_tol = options.tol;
  Json integrals = Json::object();
  Json integrand;
  for (Orientation o : orientations_for(doc, flags, base)) {
    holofol::LoopSpec loop = base;
    loop.orientation = o;
    const auto result = holofol::loop_integral_alpha(field, loop, curve, loop_options);
    integrand = json_io::encode(result.integrand);
    integrals[json_io::to_string(o)] = {{"value", json_io::encode(result.value)},
                                        {"method", "residue"},
                                        {"quadrature", json_io::encode(result.quadrature)},
                                        {"quadrature_nodes", result.quadrature_nodes},
                                        {"residue_quadrature_delta", result.delta},
                                        {"exp_value", json_io::encode(std::exp(result.value))}};
  }
  write_output(flags, Json{{"schema", json_io::kSchema},
                           {"radius", base.radius},
                           {"pullback", integrand},
                           {"integrals", integrals}});
  return kExitOk;
}

void write_trace(const std::string& path, const std::vector<holofol::LiftSample>& samples) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path);
  std::fprintf(f, "s,c_re,c_im\n");
  for (const auto& s : samples) std::fprintf(f, "%.17g,%.17g,%.17g\n", s.s, s.c.real(), s.c.imag());
  std::fclose(f);
}

int cmd_holonomy(const Flags& flags) {
  const Json doc = read_document(flags.input);
  Json merged = doc;
  // The holonomy request carries "eps" and "samples" at top level.
  if (!merged.contains("options")) merged["options"] = Json::object();
  if (doc.contains("eps")) merged["options"]["eps"] = doc["eps"];
  if (doc.contains("samples")) merged["options"]["samples"] = doc["samples"];
  const auto options = options_from(merged, flags);
  const auto field = json_io::decode_field(json_io::require(doc, "field", ""), "/field");
  const holofol::LoopSpec base = loop_from(doc, options);

  std::string method = flags.method;
  if (method.empty()) method = doc.contains("method") ? doc["method"].get<std::string>() : "variational";
  if (method != "variational" && method != "fd") {
    throw Error(ErrorKind::kSchema, "/method: expected \"variational\" or \"fd\"");
  }

  Json results = Json::array();
  bool traced = false;
  for (Orientation o : orientations_for(merged, flags, base)) {
    holofol::LoopSpec loop = base;
    loop.orientation = o;
    const auto frame = holofol::build_frame(field, loop, options.samples, options.holonomy);
    const auto result = method == "fd"
                            ? holofol::holonomy_derivative_fd(frame, options.fd_eps, options.holonomy)
                            : holofol::holonomy_derivative_variational(frame, options.holonomy);
    Json entry = json_io::encode(result);
    entry["orientation"] = json_io::to_string(o);
    const auto& d = frame.diagnostics();
    entry["frame"] = {{"samples", d.samples},
                      {"min_transversality", d.min_transversality},
                      {"max_leaf_defect", d.max_leaf_defect},
                      {"max_phase_step", d.max_phase_step},
                      {"phase_mismatch", d.phase_mismatch},
                      {"winding", d.winding},
                      {"closure_error", d.closure_error}};
    results.push_back(entry);
    if (!flags.trace.empty() && !traced) {
      std::vector<holofol::LiftSample> samples;
      holofol::lift_loop(frame, flags.eps.value_or(1e-6), options.holonomy, &samples);
      write_trace(flags.trace, samples);
      traced = true;
    }
  }
  write_output(flags, Json{{"schema", json_io::kSchema}, {"results", results}});
  return kExitOk;
}

int cmd_real_points(const Flags& flags) {
  const Json doc = read_document(flags.input);
  const holofol::BivarPoly F = doc.contains("curve")
                                   ? json_io::decode_curve(doc["curve"], "/curve")
                                   : json_io::decode_curve(doc, "");
  const holofol::RealCurve curve = holofol::RealCurve::make(F);
  std::string method = flags.method;
  if (method.empty() && doc.contains("method")) method = doc["method"].get<std::string>();
  if (method.empty()) method = F.degree() <= 2 ? "conic" : "sample";

  Json out{{"schema", json_io::kSchema}, {"method", method}};
  if (method == "conic") {
    const auto verdict = holofol::conic_real_points(curve);
    out["verdict"] = verdict.empty ? "empty" : "nonempty";
    out["exact_arithmetic"] = verdict.exact_arithmetic;
    out["witness"] = verdict.witness ? Json{{"z", verdict.witness->z}, {"w", verdict.witness->w}}
                                     : Json(nullptr);
  } else if (method == "sample") {
    const double half_width =
        doc.contains("half_width") ? json_io::decode_number(doc["half_width"], "/half_width") : 10.0;
    const int grid = doc.contains("grid") ? json_io::decode_int(doc["grid"], "/grid") : 200;
    const auto verdict = holofol::sample_real_zeros(curve, half_width, grid);
    out["verdict"] = verdict.found ? "found" : "none_found";
    out["certifies_emptiness"] = verdict.certifies_emptiness;
    out["min_abs"] = verdict.min_abs;
    out["min_location"] = {{"z", verdict.min_location.z}, {"w", verdict.min_location.w}};
    Json points = Json::array();
    for (const auto& p : verdict.points) points.push_back({{"z", p.z}, {"w", p.w}});
    out["points"] = points;
  } else {
    throw Error(ErrorKind::kSchema, "/method: expected \"conic\" or \"sample\"");
  }
  write_output(flags, out);
  return kExitOk;
}

int cmd_report(const Flags& flags) {
  Json doc = read_document(flags.input);
  holofol::AnalysisInput input = holofol::parse_input(doc);
  input.options = options_from(doc, flags);
  const holofol::AnalysisReport report = holofol::run_report(input);
  write_output(flags, holofol::to_json(report));
  int code = kExitOk;
  for (const auto& e : report.errors) code = std::max(code, exit_code_for(e.kind));
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holomorphic foliation analysis: invariant curves, holonomy, real points"};
  app.require_subcommand(1);
  Flags flags;

  auto add_shared = [&](CLI::App* cmd) {
    cmd->add_option("--input", flags.input, "Input JSON document ('-' for stdin)");
    cmd->add_option("--tol", flags.tol, "Cross-check tolerance");
    cmd->add_option("--orientation", flags.orientation, "ccw, cw or both")
        ->check(CLI::IsMember({"ccw", "cw", "both"}));
    cmd->add_option("--radius", flags.radius, "Parameter circle radius");
    cmd->add_option("--method", flags.method, "Method name");
    cmd->add_option("--output", flags.output, "Output path (default stdout)");
    cmd->add_option("--trace", flags.trace, "CSV trace of a lifted path");
    cmd->add_option("--samples", flags.samples, "Frame samples");
    cmd->add_option("--eps", flags.eps, "Finite-difference step / traced offset");
  };

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Flags&);
  };
  const Command commands[] = {
      {"check-invariant", "Cofactor test for a candidate invariant curve", cmd_check_invariant},
      {"alpha", "Integrability form alpha with d(omega) = alpha ^ omega", cmd_alpha},
      {"integrate", "Loop integral of alpha by residues and quadrature", cmd_integrate},
      {"holonomy", "Holonomy first variation along a loop", cmd_holonomy},
      {"real-points", "Real points of a real algebraic curve", cmd_real_points},
      {"report", "Full analysis report", cmd_report},
  };
  int (*selected)(const Flags&) = nullptr;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_shared(sub);
    sub->callback([&selected, run = c.run] { selected = run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitSchema;
  }

  try {
    return selected(flags);
  } catch (const Error& e) {
    std::cerr << "holofol: " << holofol::to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const Json::exception& e) {
    std::cerr << "holofol: schema: " << e.what() << "\n";
    return kExitSchema;
  }
}
