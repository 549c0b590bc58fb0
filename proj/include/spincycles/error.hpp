#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spincycles {

enum class ErrorCode {
  kMalformedInput,
  kNonIntegerCoordinate,
  kTooFewVertices,
  kNonConvex,
  kCollinear,
  kGenusZero,
  kNotSmooth,
  kEvennessUndefined,
  kNotAVertex,
  kWrongRegime,
  kNotInterior,
  kNotPrimitive,
  kLengthMismatch,
  kGenusMismatch,
  kGenusTooLarge,
  kMixedTypes,
  kSameIndex,
  kNotQSymplectic,
  kNotSymplectic,
  kCapExhausted,
  kNotCompleted,
  kRuleNotApplicable,
  kMissingClass,
  kUnknownCurve,
  kOverflow,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spincycles
