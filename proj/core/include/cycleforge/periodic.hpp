#pragma once

#include <functional>

#include "cycleforge/interpolation.hpp"

namespace cycleforge {

inline constexpr double kDefaultBaseTime = 2010.0;
inline constexpr double kDefaultPeriod = 10.0;

/// Maps t >= t0 into the base interval. Each period is half-open on the left,
/// (t0 + kT, t0 + (k+1)T] -> (t0, t0 + T], except t0 itself which maps to t0.
double fold_time(double t, double t0, double period);

/// T-periodic extension G of a function defined on [t0, t0 + T].
class PeriodicExtension {
 public:
  using Base = std::function<double(double)>;

  /// The interpolant's domain must be exactly [t0, t0 + period].
  PeriodicExtension(Interpolant base, double t0 = kDefaultBaseTime,
                    double period = kDefaultPeriod);
  /// Arbitrary callable; it is only ever evaluated on [t0, t0 + period].
  PeriodicExtension(Base base, double t0, double period);

  double t0() const { return t0_; }
  double period() const { return period_; }
  double base(double tau) const { return base_(tau); }

  double operator()(double t) const;

 private:
  Base base_;
  double t0_;
  double period_;
};

double periodic_extend(const PeriodicExtension& pe, double t);

}  // namespace cycleforge
