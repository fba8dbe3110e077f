#include "fracop/error.hpp"

namespace fracop {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kTooFewKnots: return "TooFewKnots";
    case ErrorCode::kNonMonotoneKnots: return "NonMonotoneKnots";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kOutOfDomain: return "OutOfDomain";
    case ErrorCode::kOrderTooHigh: return "OrderTooHigh";
    case ErrorCode::kUnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::kSpecInvalid: return "SpecInvalid";
    case ErrorCode::kIncompatibleScalingKind: return "IncompatibleScalingKind";
    case ErrorCode::kNotContractive: return "NotContractive";
    case ErrorCode::kMaxIterExceeded: return "MaxIterExceeded";
    case ErrorCode::kHypothesisViolated: return "HypothesisViolated";
    case ErrorCode::kMaxTermsExceeded: return "MaxTermsExceeded";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace fracop
