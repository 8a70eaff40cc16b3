#pragma once

#include <string>
#include <string_view>

namespace cycleforge {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Fixed-point rendering with `digits` decimals (used for SVG coordinates).
std::string format_fixed(double value, int digits);

/// Strict full-string parse; no leading/trailing junk, no locale.
bool parse_double(std::string_view text, double& out);
bool parse_int(std::string_view text, int& out);

}  // namespace cycleforge
