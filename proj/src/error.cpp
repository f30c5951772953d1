#include "mbennett/error.hpp"

namespace mbennett {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kNotInvertible: return "NotInvertible";
    case ErrorCode::kDegenerateDisplacement: return "DegenerateDisplacement";
    case ErrorCode::kSingularMap: return "SingularMap";
    case ErrorCode::kZeroDivisor: return "ZeroDivisor";
    case ErrorCode::kFlipSingular: return "FlipSingular";
    case ErrorCode::kNoUniqueSolution: return "NoUniqueSolution";
    case ErrorCode::kHypothesisViolated: return "HypothesisViolated";
    case ErrorCode::kGenericityViolated: return "GenericityViolated";
    case ErrorCode::kInconsistent: return "Inconsistent";
    case ErrorCode::kDegenerateAxis: return "DegenerateAxis";
    case ErrorCode::kDegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::kIdenticalLines: return "IdenticalLines";
    case ErrorCode::kDegeneratePair: return "DegeneratePair";
    case ErrorCode::kAllParallel: return "AllParallel";
    case ErrorCode::kZeroDistance: return "ZeroDistance";
  }
  return "Unknown";
}

}  // namespace mbennett
