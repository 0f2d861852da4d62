#include "profitrec/error.hpp"

namespace profitrec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDegenerateCustomer: return "DegenerateCustomer";
    case ErrorCode::kInvalidTau: return "InvalidTau";
    case ErrorCode::kInvalidRating: return "InvalidRating";
    case ErrorCode::kNonPositiveProfit: return "NonPositiveProfit";
    case ErrorCode::kZeroRecommendation: return "ZeroRecommendation";
    case ErrorCode::kNoFeasibleWitness: return "NoFeasibleWitness";
    case ErrorCode::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::kInvalidProbability: return "InvalidProbability";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kEmptyInput: return "EmptyInput";
  }
  return "Unknown";
}

}  // namespace profitrec
