#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "cycleforge/logistic.hpp"
#include "cycleforge/periodic.hpp"

namespace cycleforge {

/// Effective time scale * G(t) + offset fed to the logistic; the periodic
/// extension acts as a delay/acceleration factor.
class TimeWarp {
 public:
  /// Throws InvalidArgument if scale is zero or non-finite.
  TimeWarp(PeriodicExtension warp, double scale = 1.0, double offset = 0.0);

  const PeriodicExtension& extension() const { return warp_; }
  double scale() const { return scale_; }
  double offset() const { return offset_; }

  double operator()(double t) const;

 private:
  PeriodicExtension warp_;
  double scale_;
  double offset_;
};

/// Observed range of G over its base interval, from `samples` evenly spaced
/// evaluations.
struct WarpRange {
  double lo;
  double hi;
};
WarpRange observed_range(const PeriodicExtension& pe, std::size_t samples = 1001);

/// Affine map sending [range.lo, range.hi] onto the logistic-time window
/// [window_lo, window_hi] (i.e. warped time minus calendar_origin). A constant
/// G maps to window_lo.
TimeWarp auto_window_warp(PeriodicExtension pe, WarpRange range,
                          double window_lo, double window_hi,
                          double calendar_origin);

class CycleModel {
 public:
  CycleModel(LogisticModel logistic, TimeWarp warp, double calendar_origin)
      : logistic_(logistic), warp_(std::move(warp)),
        calendar_origin_(calendar_origin) {}

  const LogisticModel& logistic() const { return logistic_; }
  const TimeWarp& warp() const { return warp_; }
  double calendar_origin() const { return calendar_origin_; }
  double base_start() const { return warp_.extension().t0(); }
  double period() const { return warp_.extension().period(); }

  /// Logistic time for calendar time t: warp(t) - calendar_origin.
  double logistic_time(double t) const;
  double operator()(double t) const;

 private:
  LogisticModel logistic_;
  TimeWarp warp_;
  double calendar_origin_;
};

/// calendar_origin defaults to the warp's base time.
CycleModel compose(const LogisticModel& m, TimeWarp w,
                   std::optional<double> calendar_origin = std::nullopt);

double cycle_eval(const CycleModel& cm, double t);

struct CurveMeta {
  double capacity = 0.0;
  double rate = 0.0;
  double y_init = 0.0;
  double base_start = 0.0;
  double period = 0.0;
  double warp_scale = 1.0;
  double warp_offset = 0.0;
  double calendar_origin = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t count = 0;
};

struct SampledCurve {
  std::vector<double> ts;
  std::vector<double> ys;
  std::optional<CurveMeta> meta;

  /// Validates ts strictly increasing and ts.size() == ys.size() >= 2.
  static SampledCurve create(std::vector<double> ts, std::vector<double> ys);
  std::size_t size() const { return ts.size(); }
};

/// n evenly spaced samples; both endpoints included exactly.
SampledCurve sample_curve(const CycleModel& cm, double t_start, double t_end,
                          std::size_t n);

struct InflectionPoint {
  double time;
  double value;
};

/// Sign changes of the second differences, located by linear interpolation of
/// their zero crossing. With no eps, 1e-9 * max |second difference| is used.
std::vector<InflectionPoint> inflection_points(
    const SampledCurve& sc, std::optional<double> eps = std::nullopt);

enum class Trend { Increasing, Decreasing, Flat };
std::string_view to_string(Trend trend) noexcept;

struct PhaseSegment {
  double start;
  double end;
  Trend trend;
};

/// 1e-9 * capacity.
double default_flat_tolerance(const LogisticModel& m);

/// Maximal runs of first differences with a common trend (|dy| <= eps is
/// Flat). Consecutive segments share endpoints and cover [ts.front, ts.back].
std::vector<PhaseSegment> phase_segments(const SampledCurve& sc, double eps);

/// max |y(t + T) - y(t)| over `grid` points t evenly spaced in
/// (t0, t0 + T].
double periodicity_deviation(const CycleModel& cm, double period,
                             std::size_t grid);

}  // namespace cycleforge
