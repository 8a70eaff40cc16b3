#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cycleforge/interpolation.hpp"
#include "cycleforge/sdf.hpp"

namespace cycleforge {

enum class LogisticSource { Fit, Explicit };
enum class WarpMode { Affine, AutoWindow };

/// Settings for the full aggregation -> interpolation -> periodic extension
/// -> logistic -> composition -> analysis pipeline.
struct RunConfig {
  int base_year = kDefaultBaseYear;
  double period = 10.0;
  std::vector<IndicatorDef> indicators;

  InterpolantKind interpolant = InterpolantKind::LagrangeBarycentric;
  std::size_t max_lagrange_nodes = kDefaultMaxLagrangeNodes;

  LogisticSource logistic_source = LogisticSource::Fit;
  double capacity = 0.0;  // Explicit only
  double rate = 0.0;
  double y_init = 0.0;

  WarpMode warp_mode = WarpMode::AutoWindow;
  double warp_scale = 1.0;   // Affine only
  double warp_offset = 0.0;
  // AutoWindow target in logistic time; defaults to [0, period].
  std::optional<double> window_lo;
  std::optional<double> window_hi;

  // Calendar year mapped to logistic t = 0; defaults to base_year.
  std::optional<double> calendar_origin;

  struct Sampling {
    double start = 0.0;
    double end = 0.0;
    std::size_t count = 0;
  } sampling;

  struct Analysis {
    std::optional<double> inflection_eps;
    std::optional<double> flat_eps;
    std::size_t periodicity_grid = 1000;
    double fraction = 0.9;
    double root_tol = 1e-12;
  } analysis;

  struct Outputs {
    std::string report = "report.txt";
    std::string curve_csv = "curve.csv";
    std::string svg = "curve.svg";
  } outputs;

  // Indicator CSV, resolved relative to the config file's directory.
  std::optional<std::filesystem::path> data;

  double origin() const {
    return calendar_origin.value_or(static_cast<double>(base_year));
  }
};

/// Parses and validates a JSON config. Unknown keys are rejected; failures
/// throw SchemaError naming the offending field path.
RunConfig parse_config(std::string_view json_text);

/// Reads `path` (IoError if unreadable) and parses it. A relative `data`
/// entry is resolved against the config file's directory.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace cycleforge
