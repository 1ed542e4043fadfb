#pragma once

#include <stdexcept>
#include <string>

namespace qhjqes {

/// Failure categories. The CLI maps `InvalidInput` to exit code 1 and every
/// other kind to exit code 2.
enum class ErrorKind {
  InvalidInput,
  InsufficientDepth,
  PoleOnContour,
  MatchingFailure,
  BranchIndeterminate,
  NonQesParameterization,
  QesConditionViolated,
  NonRealEnergy,
  DegenerateZero,
  NoSeparatingContour,
  UnexpectedGrowth,
  NonConvergence,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qhjqes
