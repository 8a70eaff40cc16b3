#pragma once

#include <optional>
#include <span>
#include <string>

namespace cycleforge {

/// Verhulst logistic y(t) = K / (1 + c exp(-r t)) with y(0) = y_init and
/// c = (K - y_init) / y_init. Solves dy/dt = r y (1 - y / K).
class LogisticModel {
 public:
  /// Throws InvalidModel unless capacity > 0, rate > 0, 0 < y_init < capacity.
  static LogisticModel create(double capacity, double rate, double y_init);
  /// Same, parameterized by c > 0 instead of y_init.
  static LogisticModel from_shape(double capacity, double rate, double c);

  double capacity() const { return capacity_; }
  double rate() const { return rate_; }
  double y_init() const { return y_init_; }
  double c() const { return c_; }

 private:
  LogisticModel(double capacity, double rate, double y_init, double c)
      : capacity_(capacity), rate_(rate), y_init_(y_init), c_(c) {}

  double capacity_;
  double rate_;
  double y_init_;
  double c_;
};

/// exp() arguments are clamped to this magnitude.
inline constexpr double kExpClamp = 700.0;

double logistic_eval(const LogisticModel& m, double t);
double logistic_deriv(const LogisticModel& m, double t);
double logistic_normalized(const LogisticModel& m, double t);

/// ln(c) / rate, where y = capacity / 2 and the curvature changes sign.
double inflection_time(const LogisticModel& m);

/// Time at which y reaches 2 y_init. Throws Unreachable if 2 y_init >= K.
double doubling_time(const LogisticModel& m);

/// Time at which y reaches frac * K:
///   (1/r) ln[ frac (K - y_init) / (y_init (1 - frac)) ].
/// Throws FracOutOfRange unless 0 < frac < 1 and NotAfterStart if the level
/// is below y_init (frac * K == y_init gives 0).
double time_to_fraction(const LogisticModel& m, double frac);

struct FitOptions {
  int max_iterations = 200;
  double relative_step_tol = 1e-10;
};

struct FitDiagnostics {
  double residual_norm = 0.0;  // sqrt of the sum of squared residuals
  int iterations = 0;
  bool converged = false;
  bool degenerate = false;  // capacity not identifiable from the data
  std::string message;
};

struct LogisticFit {
  LogisticModel model;
  FitDiagnostics diagnostics;
};

/// Starting point used when the caller supplies none: capacity 1.05 max(ys),
/// rate and c from ordinary least squares on ln(capacity / y - 1) against t.
LogisticModel initial_guess(std::span<const double> ts,
                            std::span<const double> ys);

/// Damped Gauss-Newton (Levenberg-Marquardt) minimization of
/// sum (y(t_i) - ys_i)^2. Non-convergence is reported in the diagnostics with
/// the best model found, not thrown.
LogisticFit fit_logistic(std::span<const double> ts, std::span<const double> ys,
                         std::optional<LogisticModel> init = std::nullopt,
                         const FitOptions& options = {});

}  // namespace cycleforge
