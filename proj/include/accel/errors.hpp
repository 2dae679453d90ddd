#pragma once

#include <stdexcept>
#include <string>

namespace accel {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  SingularMidBlock,
  NotNormalizable,
  CriticalFrequency,
  ComplexBranch,
  DegenerateBvp,
  ZeroTau,
  GridTooSmall,
  QuadratureFailure,
  BadDiscretization,
  NonConvergent,
  NotOrthogonal,
  CriticalMode,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace accel
