#include "accel/errors.hpp"

namespace accel {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularMidBlock: return "SingularMidBlock";
    case ErrorKind::NotNormalizable: return "NotNormalizable";
    case ErrorKind::CriticalFrequency: return "CriticalFrequency";
    case ErrorKind::ComplexBranch: return "ComplexBranch";
    case ErrorKind::DegenerateBvp: return "DegenerateBvp";
    case ErrorKind::ZeroTau: return "ZeroTau";
    case ErrorKind::GridTooSmall: return "GridTooSmall";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::BadDiscretization: return "BadDiscretization";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::CriticalMode: return "CriticalMode";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace accel
