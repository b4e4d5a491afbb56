#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace okun {

/// Six significant digits, '.' decimal separator, locale independent.
/// Negative zero prints as "0".
[[nodiscard]] inline std::string format_number(double x) {
    if (x == 0.0) x = 0.0;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

/// Value after a round trip through format_number.
[[nodiscard]] inline double round_sig6(double x) {
    const std::string s = format_number(x);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

}  // namespace okun
