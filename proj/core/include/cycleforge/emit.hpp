#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "cycleforge/cycle.hpp"

namespace cycleforge {

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

/// Header `t,y_dd`, one row per sample, shortest round-trip decimals.
std::string curve_csv(const SampledCurve& sc);
void emit_curve_csv(const SampledCurve& sc, const std::filesystem::path& path);

/// Inverse of curve_csv.
SampledCurve parse_curve_csv(std::string_view text);
SampledCurve read_curve_csv(const std::filesystem::path& path);

inline constexpr int kSvgWidth = 800;
inline constexpr int kSvgHeight = 500;

/// Standalone SVG 1.1 document: the curve as one polyline, one circle per
/// marker, and axis labels with the time and value ranges.
std::string curve_svg(const SampledCurve& sc,
                      std::span<const InflectionPoint> markers);
void emit_svg(const SampledCurve& sc, std::span<const InflectionPoint> markers,
              const std::filesystem::path& path);

}  // namespace cycleforge
