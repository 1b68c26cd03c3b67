#include "sptkit/errors.hpp"

namespace sptkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonUnitaryGenerator: return "NonUnitaryGenerator";
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::UnknownGroup: return "UnknownGroup";
    case ErrorCode::UnknownIrrep: return "UnknownIrrep";
    case ErrorCode::NotScalarOnKernel: return "NotScalarOnKernel";
    case ErrorCode::NonIntegerMultiplicity: return "NonIntegerMultiplicity";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MultiplicityTooHigh: return "MultiplicityTooHigh";
    case ErrorCode::DegenerateSeed: return "DegenerateSeed";
    case ErrorCode::ClassMismatch: return "ClassMismatch";
    case ErrorCode::MissingCG: return "MissingCG";
    case ErrorCode::NonInjectiveMPS: return "NonInjectiveMPS";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NotSymmetricOrAntisymmetric: return "NotSymmetricOrAntisymmetric";
    case ErrorCode::NoIntertwiner: return "NoIntertwiner";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ZeroAmplitudeOutcome: return "ZeroAmplitudeOutcome";
    case ErrorCode::AttemptsExhausted: return "AttemptsExhausted";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonCanonical: return "NonCanonical";
    case ErrorCode::DegenerateDominantEigenvalue: return "DegenerateDominantEigenvalue";
    case ErrorCode::CheckFailed: return "CheckFailed";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::ParseError:
    case ErrorCode::NonUnitaryGenerator:
    case ErrorCode::OrderExceeded:
    case ErrorCode::UnknownGroup:
    case ErrorCode::UnknownIrrep:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::MultiplicityTooHigh:
    case ErrorCode::ClassMismatch:
    case ErrorCode::MissingCG:
    case ErrorCode::LengthMismatch:
    case ErrorCode::NotScalarOnKernel:
      return 2;
    case ErrorCode::NoConvergence:
      return 4;
    default:
      return 3;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace sptkit
