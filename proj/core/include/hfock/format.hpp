#pragma once

#include <string>

namespace hfock {

/// Fixed float rendering used by every file writer: scientific notation,
/// 12 significant digits, lowercase exponent ("1.00000000000e+00").
std::string format_real(double value);

}  // namespace hfock
