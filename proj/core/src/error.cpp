#include "irsce/error.hpp"

namespace irsce {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ColumnMismatch: return "ColumnMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidMode: return "InvalidMode";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::SvdFailure: return "SvdFailure";
    case ErrorCode::NonFactorableArray: return "NonFactorableArray";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::QExceedsT: return "QExceedsT";
    case ErrorCode::NExceedsT: return "NExceedsT";
    case ErrorCode::IdentifiabilityError: return "IdentifiabilityError";
    case ErrorCode::ZeroReference: return "ZeroReference";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace irsce
