#pragma once

#include <string>

namespace covert::csv {

// Marker written in place of quantities that cannot be estimated.
inline constexpr const char* kUnavailable = "NA";

/// 12 significant digits, '.' decimal point, "NA" for NaN.
std::string number(double v);

inline const char* boolean(bool v) { return v ? "true" : "false"; }

}  // namespace covert::csv
