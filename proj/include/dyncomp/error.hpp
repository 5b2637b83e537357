#ifndef DYNCOMP_ERROR_HPP
#define DYNCOMP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace dyncomp {

// Every failure the library can raise. The numeric values are mirrored by the
// dc_status enum of the C API and must stay in sync with it.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kParseError,
  kValidationError,
  kIoError,
  kKindMismatch,
  kBallTooLarge,
  kDoublingNotFound,
  kNoEpsilonGap,
  kHypothesisViolated,
  kInvariantBroken,
  kEpsilonScheduleExhausted,
  kNoDensityGap,
  kNoSuitableN,
  kNotTransitive,
  kNoMeasureGap,
  kStepBudgetExceeded,
  kSearchBudgetExceeded,
  kInternal,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Validation failures carry the offending field path (e.g.
// "action.generators[0]") separately from the reason.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, std::string reason)
      : Error(ErrorCode::kValidationError, field + ": " + reason),
        field_(std::move(field)),
        reason_(std::move(reason)) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string field_;
  std::string reason_;
};

}  // namespace dyncomp

#endif  // DYNCOMP_ERROR_HPP
