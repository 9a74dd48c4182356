#include "holofol/errors.hpp"

namespace holofol {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kDivisionByZero: return "division_by_zero";
    case ErrorKind::kContourCollision: return "contour_collision";
    case ErrorKind::kDegenerateField: return "degenerate_field";
    case ErrorKind::kLeafMismatch: return "leaf_mismatch";
    case ErrorKind::kInconsistency: return "inconsistency";
    case ErrorKind::kConvergenceFailure: return "convergence_failure";
    case ErrorKind::kSingularPoint: return "singular_point";
    case ErrorKind::kTransversality: return "transversality";
    case ErrorKind::kTubeExit: return "tube_exit";
    case ErrorKind::kStiffness: return "stiffness";
    case ErrorKind::kIllConditioned: return "ill_conditioned_derivative";
    case ErrorKind::kUnsupportedDegree: return "unsupported_degree";
    case ErrorKind::kSchema: return "schema";
  }
  return "unknown";
}

}  // namespace holofol
