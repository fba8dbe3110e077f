#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracop {

enum class ErrorCode {
  kTooFewKnots,
  kNonMonotoneKnots,
  kOutOfRange,
  kOutOfDomain,
  kOrderTooHigh,
  kUnsupportedOrder,
  kSpecInvalid,
  kIncompatibleScalingKind,
  kNotContractive,
  kMaxIterExceeded,
  kHypothesisViolated,
  kMaxTermsExceeded,
  kInvalidArgument,
  kParseError,
  kIoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto an exit status and a machine-readable error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fracop
