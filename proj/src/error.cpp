#include "spincycles/error.hpp"

namespace spincycles {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedInput: return "malformed_input";
    case ErrorCode::kNonIntegerCoordinate: return "non_integer_coordinate";
    case ErrorCode::kTooFewVertices: return "too_few_vertices";
    case ErrorCode::kNonConvex: return "non_convex";
    case ErrorCode::kCollinear: return "collinear";
    case ErrorCode::kGenusZero: return "genus_zero";
    case ErrorCode::kNotSmooth: return "not_smooth";
    case ErrorCode::kEvennessUndefined: return "evenness_undefined";
    case ErrorCode::kNotAVertex: return "not_a_vertex";
    case ErrorCode::kWrongRegime: return "wrong_regime";
    case ErrorCode::kNotInterior: return "not_interior";
    case ErrorCode::kNotPrimitive: return "not_primitive";
    case ErrorCode::kLengthMismatch: return "length_mismatch";
    case ErrorCode::kGenusMismatch: return "genus_mismatch";
    case ErrorCode::kGenusTooLarge: return "genus_too_large";
    case ErrorCode::kMixedTypes: return "mixed_types";
    case ErrorCode::kSameIndex: return "same_index";
    case ErrorCode::kNotQSymplectic: return "not_q_symplectic";
    case ErrorCode::kNotSymplectic: return "not_symplectic";
    case ErrorCode::kCapExhausted: return "cap_exhausted";
    case ErrorCode::kNotCompleted: return "not_completed";
    case ErrorCode::kRuleNotApplicable: return "rule_not_applicable";
    case ErrorCode::kMissingClass: return "missing_class";
    case ErrorCode::kUnknownCurve: return "unknown_curve";
    case ErrorCode::kOverflow: return "overflow";
  }
  return "unknown";
}

}  // namespace spincycles
