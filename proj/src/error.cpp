#include "dyncomp/error.hpp"

namespace dyncomp {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kKindMismatch: return "KindMismatch";
    case ErrorCode::kBallTooLarge: return "BallTooLarge";
    case ErrorCode::kDoublingNotFound: return "DoublingNotFound";
    case ErrorCode::kNoEpsilonGap: return "NoEpsilonGap";
    case ErrorCode::kHypothesisViolated: return "HypothesisViolated";
    case ErrorCode::kInvariantBroken: return "InvariantBroken";
    case ErrorCode::kEpsilonScheduleExhausted: return "EpsilonScheduleExhausted";
    case ErrorCode::kNoDensityGap: return "NoDensityGap";
    case ErrorCode::kNoSuitableN: return "NoSuitableN";
    case ErrorCode::kNotTransitive: return "NotTransitive";
    case ErrorCode::kNoMeasureGap: return "NoMeasureGap";
    case ErrorCode::kStepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorCode::kSearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace dyncomp
