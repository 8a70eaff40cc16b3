#include "cycleforge/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "cycleforge/error.hpp"
#include "cycleforge/format.hpp"

namespace cycleforge {

namespace {

double clamped_exp(double x) {
  return std::exp(std::clamp(x, -kExpClamp, kExpClamp));
}

}  // namespace

LogisticModel LogisticModel::create(double capacity, double rate,
                                    double y_init) {
  if (!(capacity > 0.0) || !std::isfinite(capacity)) {
    throw Error(ErrorCode::InvalidModel, "capacity must be positive");
  }
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::InvalidModel, "rate must be positive");
  }
  if (!(y_init > 0.0 && y_init < capacity)) {
    throw Error(ErrorCode::InvalidModel,
                "initial value " + format_double(y_init) +
                    " must lie in (0, capacity)");
  }
  return LogisticModel(capacity, rate, y_init, (capacity - y_init) / y_init);
}

LogisticModel LogisticModel::from_shape(double capacity, double rate,
                                        double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::InvalidModel, "c must be positive");
  }
  const double y_init = capacity / (1.0 + c);
  LogisticModel m = create(capacity, rate, y_init);
  m.c_ = c;
  return m;
}

double logistic_eval(const LogisticModel& m, double t) {
  return m.capacity() / (1.0 + m.c() * clamped_exp(-m.rate() * t));
}

double logistic_deriv(const LogisticModel& m, double t) {
  // r y (1 - y/K) written as r K u / (1 + u)^2, u = c exp(-r t), which keeps
  // the value positive where 1 - y/K would cancel to zero.
  const double u = m.c() * clamped_exp(-m.rate() * t);
  const double denom = 1.0 + u;
  if (std::isinf(u)) return 0.0;
  return m.rate() * m.capacity() * (u / denom) / denom;
}

double logistic_normalized(const LogisticModel& m, double t) {
  return 1.0 / (1.0 + m.c() * clamped_exp(-m.rate() * t));
}

double inflection_time(const LogisticModel& m) {
  return std::log(m.c()) / m.rate();
}

double doubling_time(const LogisticModel& m) {
  const double k = m.capacity();
  const double y0 = m.y_init();
  if (!(2.0 * y0 < k)) {
    throw Error(ErrorCode::Unreachable,
                "2 * y_init = " + format_double(2.0 * y0) +
                    " is not below the capacity " + format_double(k));
  }
  return -std::log((k - 2.0 * y0) / (2.0 * (k - y0))) / m.rate();
}

double time_to_fraction(const LogisticModel& m, double frac) {
  if (!(frac > 0.0 && frac < 1.0)) {
    throw Error(ErrorCode::FracOutOfRange,
                "fraction " + format_double(frac) + " not in (0, 1)");
  }
  const double k = m.capacity();
  const double y0 = m.y_init();
  if (frac * k < y0) {
    throw Error(ErrorCode::NotAfterStart,
                "level " + format_double(frac * k) +
                    " is below the initial value " + format_double(y0));
  }
  if (frac * k == y0) return 0.0;
  return std::log(frac * (k - y0) / (y0 * (1.0 - frac))) / m.rate();
}

LogisticModel initial_guess(std::span<const double> ts,
                            std::span<const double> ys) {
  const double capacity = 1.05 * *std::max_element(ys.begin(), ys.end());

  // z = ln(K/y - 1) = ln c - r t
  const auto n = static_cast<double>(ts.size());
  double t_mean = 0.0;
  double z_mean = 0.0;
  std::vector<double> z(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    z[i] = std::log(capacity / ys[i] - 1.0);
    t_mean += ts[i];
    z_mean += z[i];
  }
  t_mean /= n;
  z_mean /= n;
  double sxx = 0.0;
  double sxz = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxx += (ts[i] - t_mean) * (ts[i] - t_mean);
    sxz += (ts[i] - t_mean) * (z[i] - z_mean);
  }
  const double slope = sxz / sxx;
  const double intercept = z_mean - slope * t_mean;

  double rate = -slope;
  double c = std::exp(std::clamp(intercept, -kExpClamp, kExpClamp));
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    // Data not increasing: fall back to one e-fold across the sample span.
    rate = 1.0 / (ts.back() - ts.front());
  }
  if (!(c > 0.0) || !std::isfinite(c)) c = 1.0;
  return LogisticModel::from_shape(capacity, rate, c);
}

namespace {

// Parameters are optimized in log space: theta = (ln K, ln r, ln c), which
// keeps every iterate a valid model.
struct Residuals {
  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  double ssr = 0.0;
};

Residuals evaluate(const Eigen::Vector3d& theta, std::span<const double> ts,
                   std::span<const double> ys, bool with_jacobian) {
  const double k = std::exp(theta[0]);
  const double rate = std::exp(theta[1]);
  const double c = std::exp(theta[2]);
  const auto n = static_cast<Eigen::Index>(ts.size());

  Residuals out;
  out.r.resize(n);
  if (with_jacobian) out.jac.resize(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = ts[static_cast<std::size_t>(i)];
    const double u = c * clamped_exp(-rate * t);
    const double denom = 1.0 + u;
    const double y = k / denom;
    out.r[i] = y - ys[static_cast<std::size_t>(i)];
    if (with_jacobian) {
      const double dy_du = -k / (denom * denom);
      out.jac(i, 0) = y;                     // d/d ln K
      out.jac(i, 1) = dy_du * (-rate * t) * u;  // d/d ln r
      out.jac(i, 2) = dy_du * u;             // d/d ln c
    }
  }
  out.ssr = out.r.squaredNorm();
  return out;
}

LogisticModel to_model(const Eigen::Vector3d& theta) {
  return LogisticModel::from_shape(std::exp(theta[0]), std::exp(theta[1]),
                                   std::exp(theta[2]));
}

}  // namespace

LogisticFit fit_logistic(std::span<const double> ts, std::span<const double> ys,
                         std::optional<LogisticModel> init,
                         const FitOptions& options) {
  if (ts.size() != ys.size()) {
    throw Error(ErrorCode::InvalidArgument, "ts and ys differ in length");
  }
  if (ts.size() < 4) {
    throw Error(ErrorCode::TooFewSamples,
                "logistic fit needs at least 4 samples");
  }
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (!(ys[i] > 0.0) || !std::isfinite(ys[i])) {
      throw Error(ErrorCode::NonPositiveData,
                  "sample " + std::to_string(i) + " has value " +
                      format_double(ys[i]));
    }
    if (i > 0 && !(ts[i - 1] < ts[i])) {
      throw Error(ErrorCode::NonMonotoneGrid,
                  "abscissas must be strictly increasing");
    }
  }

  const LogisticModel start = init ? *init : initial_guess(ts, ys);
  Eigen::Vector3d theta(std::log(start.capacity()), std::log(start.rate()),
                        std::log(start.c()));

  const auto [y_min, y_max] = std::minmax_element(ys.begin(), ys.end());
  if (*y_max - *y_min <= 1e-12 * *y_max) {
    FitDiagnostics diag;
    diag.residual_norm = std::sqrt(evaluate(theta, ts, ys, false).ssr);
    diag.degenerate = true;
    diag.message = "constant data: capacity and rate are not identifiable";
    return {start, diag};
  }

  Residuals cur = evaluate(theta, ts, ys, true);
  double lambda = -1.0;
  FitDiagnostics diag;
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    const Eigen::Matrix3d jtj = cur.jac.transpose() * cur.jac;
    const Eigen::Vector3d grad = cur.jac.transpose() * cur.r;
    if (lambda < 0.0) lambda = 1e-3 * jtj.diagonal().maxCoeff();
    if (cur.ssr == 0.0 || grad.norm() == 0.0) {
      diag.converged = true;
      break;
    }

    bool accepted = false;
    Eigen::Vector3d step = Eigen::Vector3d::Zero();
    while (lambda < 1e20) {
      Eigen::Matrix3d damped = jtj;
      damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-300);
      step = damped.ldlt().solve(-grad);
      if (!step.allFinite()) {
        lambda *= 10.0;
        continue;
      }
      Residuals trial = evaluate(theta + step, ts, ys, true);
      if (std::isfinite(trial.ssr) && trial.ssr <= cur.ssr) {
        theta += step;
        cur = std::move(trial);
        lambda = std::max(lambda / 10.0, 1e-300);
        accepted = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) {
      // No descent direction left at double precision.
      diag.converged = true;
      break;
    }
    // theta is logarithmic, so its absolute change is the relative change of
    // the model parameters.
    if (step.cwiseAbs().maxCoeff() < options.relative_step_tol) {
      diag.converged = true;
      ++iter;
      break;
    }
  }

  diag.iterations = iter;
  diag.residual_norm = std::sqrt(cur.ssr);
  if (!diag.converged) {
    diag.message = "no convergence after " + std::to_string(iter) +
                   " iterations; returning best parameters found";
  }
  LogisticModel fitted = start;
  try {
    fitted = to_model(theta);
  } catch (const Error&) {
    diag.converged = false;
    diag.degenerate = true;
    diag.message = "fitted parameters left the valid model range";
  }
  return {fitted, diag};
}

}  // namespace cycleforge
