#include "cycleforge/cycle.hpp"

#include <algorithm>
#include <cmath>

#include "cycleforge/error.hpp"
#include "cycleforge/format.hpp"
#include "cycleforge/numerics.hpp"

namespace cycleforge {

TimeWarp::TimeWarp(PeriodicExtension warp, double scale, double offset)
    : warp_(std::move(warp)), scale_(scale), offset_(offset) {
  if (scale == 0.0 || !std::isfinite(scale)) {
    throw Error(ErrorCode::InvalidArgument,
                "warp scale must be finite and non-zero");
  }
  if (!std::isfinite(offset)) {
    throw Error(ErrorCode::InvalidArgument, "warp offset must be finite");
  }
}

double TimeWarp::operator()(double t) const {
  return scale_ * periodic_extend(warp_, t) + offset_;
}

WarpRange observed_range(const PeriodicExtension& pe, std::size_t samples) {
  samples = std::max<std::size_t>(samples, 2);
  double lo = pe.base(pe.t0());
  double hi = lo;
  for (std::size_t i = 1; i < samples; ++i) {
    const double tau =
        i + 1 == samples
            ? pe.t0() + pe.period()
            : pe.t0() + pe.period() * static_cast<double>(i) /
                            static_cast<double>(samples - 1);
    const double g = pe.base(tau);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  return {lo, hi};
}

TimeWarp auto_window_warp(PeriodicExtension pe, WarpRange range,
                          double window_lo, double window_hi,
                          double calendar_origin) {
  if (!(window_lo < window_hi)) {
    throw Error(ErrorCode::BadRange, "warp window requires lo < hi");
  }
  double scale = 1.0;
  if (range.hi > range.lo) {
    scale = (window_hi - window_lo) / (range.hi - range.lo);
  }
  const double offset = window_lo + calendar_origin - scale * range.lo;
  return TimeWarp(std::move(pe), scale, offset);
}

double CycleModel::logistic_time(double t) const {
  return warp_(t) - calendar_origin_;
}

double CycleModel::operator()(double t) const {
  return logistic_eval(logistic_, logistic_time(t));
}

CycleModel compose(const LogisticModel& m, TimeWarp w,
                   std::optional<double> calendar_origin) {
  const double origin = calendar_origin.value_or(w.extension().t0());
  if (!std::isfinite(origin)) {
    throw Error(ErrorCode::InvalidArgument, "calendar origin must be finite");
  }
  return CycleModel(m, std::move(w), origin);
}

double cycle_eval(const CycleModel& cm, double t) { return cm(t); }

SampledCurve SampledCurve::create(std::vector<double> ts,
                                  std::vector<double> ys) {
  if (ts.size() != ys.size()) {
    throw Error(ErrorCode::InvalidArgument, "ts and ys differ in length");
  }
  if (ts.size() < 2) {
    throw Error(ErrorCode::TooFewSamples, "a curve needs at least 2 samples");
  }
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (!(ts[i - 1] < ts[i])) {
      throw Error(ErrorCode::NonMonotoneGrid,
                  "sample times must be strictly increasing");
    }
  }
  return SampledCurve{std::move(ts), std::move(ys), std::nullopt};
}

SampledCurve sample_curve(const CycleModel& cm, double t_start, double t_end,
                          std::size_t n) {
  if (!(t_start < t_end) || n < 2 || !std::isfinite(t_end)) {
    throw Error(ErrorCode::BadRange,
                "sampling requires t_start < t_end and at least 2 samples");
  }
  if (t_start < cm.base_start()) {
    throw Error(ErrorCode::BeforeBase,
                "sampling starts at " + format_double(t_start) +
                    " before the base time " + format_double(cm.base_start()));
  }

  std::vector<double> ts(n);
  const double span = t_end - t_start;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    ts[i] = t_start + span * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  ts[n - 1] = t_end;

  std::vector<double> ys(n);
  std::transform(ts.begin(), ts.end(), ys.begin(),
                 [&](double t) { return cycle_eval(cm, t); });

  SampledCurve sc = SampledCurve::create(std::move(ts), std::move(ys));
  const auto& lm = cm.logistic();
  sc.meta = CurveMeta{lm.capacity(),          lm.rate(),
                      lm.y_init(),            cm.base_start(),
                      cm.period(),            cm.warp().scale(),
                      cm.warp().offset(),     cm.calendar_origin(),
                      t_start,                t_end,
                      n};
  return sc;
}

std::vector<InflectionPoint> inflection_points(const SampledCurve& sc,
                                               std::optional<double> eps) {
  if (sc.size() < 5) {
    throw Error(ErrorCode::TooFewSamples,
                "inflection detection needs at least 5 samples");
  }
  const std::vector<double> d2 = second_differences(sc.ts, sc.ys);
  const double tol = eps.value_or(default_zero_tolerance(d2));

  std::vector<InflectionPoint> out;
  for (std::size_t i : sign_change_indices(d2, tol)) {
    std::size_t j = i + 1;
    while (!(std::abs(d2[j]) > tol)) ++j;
    // d2[k] is centred on sample k + 1.
    const double ta = sc.ts[i + 1];
    const double tb = sc.ts[j + 1];
    const double w = d2[i] / (d2[i] - d2[j]);
    const double t = ta + w * (tb - ta);

    auto hi = std::upper_bound(sc.ts.begin(), sc.ts.end(), t);
    std::size_t k = hi == sc.ts.end()
                        ? sc.ts.size() - 1
                        : static_cast<std::size_t>(hi - sc.ts.begin());
    k = std::max<std::size_t>(k, 1);
    const double s = (t - sc.ts[k - 1]) / (sc.ts[k] - sc.ts[k - 1]);
    const double y = sc.ys[k - 1] + s * (sc.ys[k] - sc.ys[k - 1]);
    out.push_back({t, y});
  }
  return out;
}

std::string_view to_string(Trend trend) noexcept {
  switch (trend) {
    case Trend::Increasing: return "Increasing";
    case Trend::Decreasing: return "Decreasing";
    case Trend::Flat: return "Flat";
  }
  return "Unknown";
}

double default_flat_tolerance(const LogisticModel& m) {
  return 1e-9 * m.capacity();
}

std::vector<PhaseSegment> phase_segments(const SampledCurve& sc, double eps) {
  if (sc.size() < 2) {
    throw Error(ErrorCode::TooFewSamples, "phase detection needs 2 samples");
  }
  if (!(eps >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "eps must be non-negative");
  }
  std::vector<PhaseSegment> out;
  for (std::size_t i = 0; i + 1 < sc.size(); ++i) {
    const double dy = sc.ys[i + 1] - sc.ys[i];
    const Trend trend = std::abs(dy) <= eps ? Trend::Flat
                        : dy > 0.0          ? Trend::Increasing
                                            : Trend::Decreasing;
    if (!out.empty() && out.back().trend == trend) {
      out.back().end = sc.ts[i + 1];
    } else {
      out.push_back({sc.ts[i], sc.ts[i + 1], trend});
    }
  }
  return out;
}

double periodicity_deviation(const CycleModel& cm, double period,
                             std::size_t grid) {
  if (grid < 2 || !(period > 0.0) || !std::isfinite(period)) {
    throw Error(ErrorCode::BadRange,
                "periodicity check needs grid >= 2 and a positive period");
  }
  const double t0 = cm.base_start();
  double worst = 0.0;
  for (std::size_t j = 1; j <= grid; ++j) {
    const double t =
        t0 + period * static_cast<double>(j) / static_cast<double>(grid);
    worst = std::max(worst, std::abs(cycle_eval(cm, t + period) -
                                     cycle_eval(cm, t)));
  }
  return worst;
}

}  // namespace cycleforge
