#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sptkit {

enum class ErrorCode {
  InvalidInput,
  ParseError,
  NonUnitaryGenerator,
  OrderExceeded,
  UnknownGroup,
  UnknownIrrep,
  NotScalarOnKernel,
  NonIntegerMultiplicity,
  DimensionMismatch,
  MultiplicityTooHigh,
  DegenerateSeed,
  ClassMismatch,
  MissingCG,
  NonInjectiveMPS,
  NoSolution,
  NotSymmetricOrAntisymmetric,
  NoIntertwiner,
  LengthMismatch,
  ZeroAmplitudeOutcome,
  AttemptsExhausted,
  NoConvergence,
  NonCanonical,
  DegenerateDominantEigenvalue,
  CheckFailed,
};

std::string_view to_string(ErrorCode code);

// Process exit status for a failure of this kind (2 validation, 3 numerical, 4 convergence).
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sptkit
