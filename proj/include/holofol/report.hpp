#pragma once

// End-to-end analysis of one input document: invariant curve, integrability
// form, loop integrals, holonomy and real points, condensed into a verdict.

#include <optional>
#include <string>
#include <vector>

#include "holofol/errors.hpp"
#include "holofol/foliation.hpp"
#include "holofol/holonomy.hpp"
#include "holofol/json_io.hpp"
#include "holofol/loops.hpp"
#include "holofol/realgeom.hpp"

namespace holofol {

struct ReportOptions {
  double tol = 1e-9;  // residue vs quadrature agreement
  std::vector<Orientation> orientations{Orientation::ccw, Orientation::cw};
  std::optional<double> radius;  // overrides the loop's radius
  int samples = 256;
  double fd_eps = 1e-4;
  /// Unset: the orientation whose variational derivative has modulus <= 1.
  std::optional<Orientation> fd_orientation;
  double half_width = 10.0;
  int grid = 200;
  double limit_cycle_tol = 1e-3;  // on |log h'(0)|
  HolonomyOptions holonomy;
};

/// A value the computed loop integral of alpha is compared against.
struct ReferenceValue {
  Complex alpha_integral;
  std::string label;
};

struct AnalysisInput {
  VectorFieldC2 field;
  std::optional<BivarPoly> curve;
  std::optional<LoopSpec> loop;
  std::optional<ReferenceValue> reference;
  ReportOptions options;
};

/// Parses {"schema", "field", "curve"?, "loop"?, "options"?, "reference"?}.
AnalysisInput parse_input(const json_io::Json& document);

/// Applies the "options" object of a document on top of `options`.
void apply_options(const json_io::Json& j, const std::string& where, ReportOptions& options);

enum class Verdict {
  complex_limit_cycle_disjoint_from_real_plane,
  limit_cycle_meets_real_plane,
  not_a_limit_cycle,
  inconclusive,
};

std::string to_string(Verdict v);

struct StageError {
  std::string stage;
  ErrorKind kind;
  std::string message;
};

struct OrientedIntegral {
  Orientation orientation;
  Complex residue;
  Complex quadrature;
  double delta = 0.0;
  int quadrature_nodes = 0;
};

struct ReferenceCheck {
  ReferenceValue reference;
  Complex closest;  // computed value nearest to the reference
  Orientation closest_orientation = Orientation::ccw;
  double delta = 0.0;
  bool matches = false;
};

struct HolonomySummary {
  HolonomyResult result;
  Orientation orientation;
  bool by_reciprocity = false;
  /// Relative distance to exp of the alpha integral for the same orientation.
  std::optional<double> alpha_delta;
  /// Relative distance to the variational value for the same orientation.
  std::optional<double> variational_delta;
};

struct RealPointsSummary {
  std::string method;  // "conic" or "sample"
  std::optional<bool> empty;  // unset when sampling found nothing
  std::optional<RealPoint> witness;
  std::optional<double> min_abs;
  bool exact = false;
};

struct AnalysisReport {
  VectorFieldC2 field;
  std::optional<BivarPoly> curve;
  std::optional<BivarPoly> lie_derivative;
  std::optional<BivarPoly> cofactor;
  std::optional<RationalOneForm> alpha;
  std::optional<bool> integrability_verified;
  std::optional<RationalFunc1> pulled_back_alpha;
  std::vector<OrientedIntegral> alpha_integrals;
  std::optional<double> antisymmetry_delta;
  std::optional<ReferenceCheck> reference;
  std::vector<HolonomySummary> holonomy;
  std::optional<double> reciprocity_delta;
  std::optional<RealPointsSummary> real_points;
  Verdict verdict = Verdict::inconclusive;
  std::vector<StageError> errors;
};

AnalysisReport run_report(const AnalysisInput& input);

/// Canonical, deterministic report body.
json_io::Json to_json(const AnalysisReport& report);

}  // namespace holofol
