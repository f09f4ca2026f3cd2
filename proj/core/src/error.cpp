#include "sixlasso/error.hpp"

namespace sixlasso {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidSparsity: return "InvalidSparsity";
    case ErrorCode::LinkRangeError: return "LinkRangeError";
    case ErrorCode::NonPositiveLambda: return "NonPositiveLambda";
    case ErrorCode::NegativeRadius: return "NegativeRadius";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::ZeroGradient: return "ZeroGradient";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::EmptyFeasibleSet: return "EmptyFeasibleSet";
    case ErrorCode::EmptyRecords: return "EmptyRecords";
  }
  return "Unknown";
}

}  // namespace sixlasso
