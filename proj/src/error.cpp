#include "qhjqes/error.hpp"

namespace qhjqes {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::InsufficientDepth: return "insufficient truncation depth";
    case ErrorKind::PoleOnContour: return "pole on contour";
    case ErrorKind::MatchingFailure: return "matching failure";
    case ErrorKind::BranchIndeterminate: return "branch rule indeterminate";
    case ErrorKind::NonQesParameterization: return "non-QES parameterization";
    case ErrorKind::QesConditionViolated: return "QES condition violated";
    case ErrorKind::NonRealEnergy: return "non-real algebraic energy";
    case ErrorKind::DegenerateZero: return "degenerate zero";
    case ErrorKind::NoSeparatingContour: return "no separating contour";
    case ErrorKind::UnexpectedGrowth: return "unexpected growth";
    case ErrorKind::NonConvergence: return "non-convergence";
  }
  return "unknown";
}

}  // namespace qhjqes
