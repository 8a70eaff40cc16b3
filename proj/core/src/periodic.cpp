#include "cycleforge/periodic.hpp"

#include <algorithm>
#include <cmath>

#include "cycleforge/error.hpp"
#include "cycleforge/format.hpp"

namespace cycleforge {

namespace {

void check_period(double t0, double period) {
  if (!std::isfinite(t0)) {
    throw Error(ErrorCode::InvalidArgument, "base time must be finite");
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw Error(ErrorCode::InvalidArgument, "period must be positive");
  }
}

}  // namespace

double fold_time(double t, double t0, double period) {
  check_period(t0, period);
  if (!(t >= t0)) {
    throw Error(ErrorCode::BeforeBase, "t = " + format_double(t) +
                                           " precedes the base time " +
                                           format_double(t0));
  }
  if (t == t0) return t0;

  // Period k covers (t0 + k*T, t0 + (k+1)*T], with the boundaries computed
  // the same way on both sides so rounding cannot leave gaps or overlaps.
  double k = std::max(0.0, std::ceil((t - t0) / period) - 1.0);
  while (t > t0 + (k + 1.0) * period) k += 1.0;
  while (k > 0.0 && t <= t0 + k * period) k -= 1.0;

  const double tau = t - k * period;
  const double hi = t0 + period;
  if (tau > hi) return hi;
  if (tau <= t0) return t0 == hi ? t0 : std::nextafter(t0, hi);
  return tau;
}

PeriodicExtension::PeriodicExtension(Interpolant base, double t0, double period)
    : t0_(t0), period_(period) {
  check_period(t0, period);
  if (base.domain_lo() != t0 || base.domain_hi() != t0 + period) {
    throw Error(ErrorCode::InvalidArgument,
                "interpolant domain [" + format_double(base.domain_lo()) +
                    ", " + format_double(base.domain_hi()) +
                    "] does not match the base interval [" +
                    format_double(t0) + ", " + format_double(t0 + period) +
                    "]");
  }
  base_ = [ip = std::move(base)](double tau) { return ip(tau); };
}

PeriodicExtension::PeriodicExtension(Base base, double t0, double period)
    : base_(std::move(base)), t0_(t0), period_(period) {
  check_period(t0, period);
  if (!base_) {
    throw Error(ErrorCode::InvalidArgument, "empty base function");
  }
}

double PeriodicExtension::operator()(double t) const {
  return base_(fold_time(t, t0_, period_));
}

double periodic_extend(const PeriodicExtension& pe, double t) { return pe(t); }

}  // namespace cycleforge
