#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sixlasso {

enum class ErrorCode {
  InvalidArgument,
  InvalidSparsity,
  LinkRangeError,
  NonPositiveLambda,
  NegativeRadius,
  ZeroMatrix,
  ZeroGradient,
  ZeroVector,
  DimensionTooLarge,
  EmptyFeasibleSet,
  EmptyRecords,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the harness, the CLI) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sixlasso
