#include "symtt/error.hpp"

namespace symtt {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIterationFailure: return "IterationFailure";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNotSquare: return "NotSquare";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kOddSize: return "OddSize";
    case ErrorCode::kNotSymPersym: return "NotSymPersym";
    case ErrorCode::kNotOmegaCirculant: return "NotOmegaCirculant";
    case ErrorCode::kUnknownName: return "UnknownName";
    case ErrorCode::kUnknownModel: return "UnknownModel";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kZeroSite: return "ZeroSite";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kGaugeViolation: return "GaugeViolation";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNotShiftInvariant: return "NotShiftInvariant";
    case ErrorCode::kNotReverseSymmetric: return "NotReverseSymmetric";
    case ErrorCode::kSymmetryMismatch: return "SymmetryMismatch";
    case ErrorCode::kWitnessViolation: return "WitnessViolation";
    case ErrorCode::kNotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace symtt
