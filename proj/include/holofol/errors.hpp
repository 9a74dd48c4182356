#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holofol {

enum class ErrorKind {
  kInvalidArgument,
  kDivisionByZero,
  kContourCollision,
  kDegenerateField,
  kLeafMismatch,
  kInconsistency,
  kConvergenceFailure,
  kSingularPoint,
  kTransversality,
  kTubeExit,
  kStiffness,
  kIllConditioned,
  kUnsupportedDegree,
  kSchema,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace holofol
