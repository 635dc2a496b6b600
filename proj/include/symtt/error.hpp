#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symtt {

enum class ErrorCode {
  kIterationFailure,
  kNotHermitian,
  kNotSquare,
  kNotSymmetric,
  kOddSize,
  kNotSymPersym,
  kNotOmegaCirculant,
  kUnknownName,
  kUnknownModel,
  kBadParams,
  kTooLarge,
  kSizeMismatch,
  kZeroSite,
  kZeroVector,
  kNotNormalized,
  kGaugeViolation,
  kShapeMismatch,
  kNotShiftInvariant,
  kNotReverseSymmetric,
  kSymmetryMismatch,
  kWitnessViolation,
  kNotDiagonalizable,
  kParseError,
};

std::string_view error_name(ErrorCode code);

// Domain error raised by every module; the code names the violated precondition.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace symtt
