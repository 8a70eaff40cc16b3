#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cycleforge/config.hpp"
#include "cycleforge/cycle.hpp"
#include "cycleforge/interpolation.hpp"
#include "cycleforge/logistic.hpp"
#include "cycleforge/periodic.hpp"
#include "cycleforge/sdf.hpp"

namespace cycleforge {

/// A closed-form timing value next to the bisection root of the same equation.
struct RootCheck {
  double closed_form = 0.0;
  double oracle = 0.0;
  double residual = 0.0;  // |closed_form - oracle|
};

/// Closed forms checked against find_root on y(t) - level. The bracket starts
/// at [0, 1/rate] and doubles until it contains the level.
RootCheck check_doubling_time(const LogisticModel& m, double root_tol = 1e-12);
RootCheck check_time_to_fraction(const LogisticModel& m, double frac,
                                 double root_tol = 1e-12);

// Stage helpers shared by run_pipeline and the CLI subcommands.
Interpolant build_base_interpolant(const RunConfig& cfg, const SdfSeries& sdf,
                                   std::vector<std::string>& warnings);
LogisticFit fit_series(const SdfSeries& sdf, double calendar_origin);
TimeWarp build_warp(const RunConfig& cfg, PeriodicExtension pe);

struct Report {
  SdfSeries sdf;

  InterpolantKind interpolant_kind = InterpolantKind::LagrangeBarycentric;
  std::size_t node_count = 0;
  double base_start = 0.0;
  double period = 0.0;
  WarpRange warp_range{0.0, 0.0};

  std::string logistic_source;  // "fit" or "explicit"
  std::optional<LogisticModel> logistic;
  std::optional<FitDiagnostics> fit;
  double inflection_time = 0.0;
  std::optional<RootCheck> doubling;
  double fraction = 0.0;
  std::optional<RootCheck> fraction_time;

  double warp_scale = 1.0;
  double warp_offset = 0.0;
  double calendar_origin = 0.0;

  std::optional<SampledCurve> curve;
  std::vector<InflectionPoint> inflections;
  std::vector<PhaseSegment> phases;
  double periodicity_deviation = 0.0;

  std::vector<std::string> warnings;

  /// Fit did not converge (CLI exit code 2).
  bool numerical_failure() const { return fit && !fit->converged; }
};

/// Runs aggregation -> interpolation -> periodic extension -> logistic ->
/// composition -> sampling and analysis. Errors are rethrown with the stage
/// name prefixed. Deterministic for identical inputs.
Report run_pipeline(const RunConfig& cfg, const IndicatorPanel& panel,
                    std::vector<std::string> ingest_warnings = {});

std::string report_to_text(const Report& r);
std::string report_to_json(const Report& r);

}  // namespace cycleforge
