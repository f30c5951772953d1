#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mbennett {

enum class ErrorCode {
  kInvalidInput,
  kNotInvertible,
  kDegenerateDisplacement,
  kSingularMap,
  kZeroDivisor,
  kFlipSingular,
  kNoUniqueSolution,
  kHypothesisViolated,
  kGenericityViolated,
  kInconsistent,
  kDegenerateAxis,
  kDegenerateConfiguration,
  kIdenticalLines,
  kDegeneratePair,
  kAllParallel,
  kZeroDistance,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mbennett
