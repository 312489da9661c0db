#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace irsce {

enum class ErrorCode {
  ColumnMismatch,
  LengthMismatch,
  IndexOutOfRange,
  InvalidMode,
  DimMismatch,
  SvdFailure,
  NonFactorableArray,
  NotPowerOfTwo,
  QExceedsT,
  NExceedsT,
  IdentifiabilityError,
  ZeroReference,
  InvalidArgument,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace irsce
