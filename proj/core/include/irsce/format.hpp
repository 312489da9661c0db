#pragma once

#include <string>

namespace irsce {

/// Shortest decimal text that parses back to exactly `x`; "inf", "-inf", "nan" otherwise.
std::string format_real(double x);

}  // namespace irsce
