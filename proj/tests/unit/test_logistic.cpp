#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cycleforge/logistic.hpp"
#include "cycleforge/numerics.hpp"
#include "support/expect_error.hpp"
#include "support/random_models.hpp"

using namespace cycleforge;
using cycleforge::testing::random_model;
using cycleforge::testing::rel_close;

namespace {

// Independent root-finding oracle for "y(t) = level", t >= 0.
double oracle_time(const LogisticModel& m, double level) {
  auto f = [&](double t) {
    return m.capacity() / (1.0 + m.c() * std::exp(-m.rate() * t)) - level;
  };
  double hi = 1.0;
  while (f(hi) < 0.0) hi *= 2.0;
  return find_root(f, {0.0, hi}, 1e-13);
}

}  // namespace

TEST(LogisticModel, Invariants) {
  const LogisticModel m = LogisticModel::create(100, 0.5, 10);
  EXPECT_DOUBLE_EQ(m.c(), 9.0);
  EXPECT_TRUE(rel_close(m.capacity() / (1.0 + m.c()), m.y_init(), 1e-12));
  EXPECT_CF_ERROR(LogisticModel::create(0, 1, 0.5), ErrorCode::InvalidModel);
  EXPECT_CF_ERROR(LogisticModel::create(1, 0, 0.5), ErrorCode::InvalidModel);
  EXPECT_CF_ERROR(LogisticModel::create(1, 1, 1), ErrorCode::InvalidModel);
  EXPECT_CF_ERROR(LogisticModel::create(1, 1, 0), ErrorCode::InvalidModel);
  EXPECT_CF_ERROR(LogisticModel::from_shape(1, 1, 0), ErrorCode::InvalidModel);
}

TEST(LogisticEval, Examples) {
  EXPECT_EQ(logistic_eval(LogisticModel::create(1, 1, 0.5), 0), 0.5);
  EXPECT_DOUBLE_EQ(logistic_eval(LogisticModel::create(100, 3.7, 10), 0), 10);
  const LogisticModel m = LogisticModel::create(100, 0.5, 10);
  EXPECT_NEAR(logistic_eval(m, 4.394449154672438), 50.0, 1e-12);
  EXPECT_NEAR(logistic_eval(m, inflection_time(m)), 50.0, 1e-12);
}

TEST(LogisticEval, OverflowSafe) {
  const LogisticModel m = LogisticModel::create(100, 0.5, 10);
  EXPECT_EQ(logistic_eval(m, 1e6), 100.0);
  const double tiny = logistic_eval(m, -1e6);
  EXPECT_GT(tiny, 0.0);
  EXPECT_LT(tiny, 1e-290);
  EXPECT_TRUE(std::isfinite(logistic_deriv(m, -1e6)));
  EXPECT_GT(logistic_deriv(m, 200.0), 0.0);
}

TEST(LogisticDeriv, Examples) {
  const LogisticModel m = LogisticModel::create(100, 0.5, 10);
  EXPECT_NEAR(logistic_deriv(m, inflection_time(m)), 12.5, 1e-12);
  EXPECT_LT(logistic_deriv(m, 200.0), 1e-30);
  EXPECT_DOUBLE_EQ(logistic_deriv(LogisticModel::create(1, 1, 0.5), 0.0), 0.25);
}

TEST(LogisticNormalized, Examples) {
  EXPECT_EQ(logistic_normalized(LogisticModel::from_shape(1, 1, 1), 0), 0.5);
  EXPECT_EQ(logistic_normalized(LogisticModel::create(100, 0.5, 10), 1e4), 1.0);
  EXPECT_DOUBLE_EQ(logistic_normalized(LogisticModel::create(100, 0.5, 10), 0), 0.1);
}

TEST(DoublingTime, Examples) {
  const LogisticModel m = LogisticModel::create(100, 0.5, 10);
  EXPECT_NEAR(doubling_time(m), 1.6218604324326575, 1e-12);
  EXPECT_NEAR(doubling_time(m), oracle_time(m, 20.0), 1e-9);
  EXPECT_NEAR(doubling_time(LogisticModel::create(4, 1, 1)), std::log(3.0), 1e-14);
  EXPECT_CF_ERROR(doubling_time(LogisticModel::create(100, 0.5, 50)), ErrorCode::Unreachable);
  EXPECT_CF_ERROR(doubling_time(LogisticModel::create(100, 0.5, 60)), ErrorCode::Unreachable);
}

TEST(TimeToFraction, Examples) {
  const LogisticModel m = LogisticModel::create(100, 0.5, 10);
  EXPECT_NEAR(time_to_fraction(m, 0.9), 8.788898309344878, 1e-12);
  EXPECT_NEAR(time_to_fraction(m, 0.9), oracle_time(m, 90.0), 1e-9);
  EXPECT_EQ(time_to_fraction(LogisticModel::create(1, 1, 0.5), 0.5), 0.0);

  double prev = time_to_fraction(m, 0.2);
  for (double eps : {1e-2, 1e-4, 1e-8}) {
    const double t = time_to_fraction(m, 0.1 + eps);
    EXPECT_GT(t, 0.0);
    EXPECT_LT(t, prev);
    prev = t;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(TimeToFraction, Errors) {
  const LogisticModel m = LogisticModel::create(100, 0.5, 10);
  EXPECT_CF_ERROR(time_to_fraction(m, 0.0), ErrorCode::FracOutOfRange);
  EXPECT_CF_ERROR(time_to_fraction(m, 1.0), ErrorCode::FracOutOfRange);
  EXPECT_CF_ERROR(time_to_fraction(m, 0.05), ErrorCode::NotAfterStart);
}

TEST(LogisticProperties, BoundsAndMonotonicity) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const LogisticModel m = random_model(rng);
    double prev = logistic_eval(m, -20.0);
    for (int k = 1; k <= 600; ++k) {
      const double t = -20.0 + 0.1 * k;
      const double y = logistic_eval(m, t);
      EXPECT_GT(y, 0.0);
      EXPECT_LE(y, m.capacity());
      EXPECT_GE(y, prev);
      prev = y;
    }
    EXPECT_NEAR(logistic_eval(m, 1e5), m.capacity(), 1e-12 * m.capacity());
  }
}

TEST(LogisticProperties, NormalizedIsEvalOverCapacity) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 100; ++i) {
    const LogisticModel m = random_model(rng);
    for (double t : {-10.0, 0.0, 1.5, 30.0}) {
      EXPECT_TRUE(rel_close(logistic_normalized(m, t),
                            logistic_eval(m, t) / m.capacity(), 1e-12));
    }
  }
}

TEST(FitLogistic, NoiselessRecovery) {
  const LogisticModel truth = LogisticModel::create(100, 0.5, 10);
  std::vector<double> ts, ys;
  for (int i = 0; i < 50; ++i) {
    ts.push_back(20.0 * i / 49.0);
    ys.push_back(logistic_eval(truth, ts.back()));
  }
  const LogisticFit fit = fit_logistic(ts, ys);
  EXPECT_TRUE(fit.diagnostics.converged);
  EXPECT_FALSE(fit.diagnostics.degenerate);
  EXPECT_TRUE(rel_close(fit.model.capacity(), 100, 1e-6));
  EXPECT_TRUE(rel_close(fit.model.rate(), 0.5, 1e-6));
  EXPECT_TRUE(rel_close(fit.model.y_init(), 10, 1e-6));
  EXPECT_LT(fit.diagnostics.residual_norm, 1e-8);
}

TEST(FitLogistic, ConstantDataIsDegenerate) {
  const std::vector<double> ts{0, 1, 2, 3, 4, 5};
  const std::vector<double> ys(6, 5.0);
  const LogisticFit fit = fit_logistic(ts, ys);
  EXPECT_FALSE(fit.diagnostics.converged);
  EXPECT_TRUE(fit.diagnostics.degenerate);
  EXPECT_FALSE(fit.diagnostics.message.empty());
}

TEST(FitLogistic, Errors) {
  const std::vector<double> ts{0, 1, 2, 3};
  EXPECT_CF_ERROR(fit_logistic(ts, std::vector<double>{1, 2, 0, 4}), ErrorCode::NonPositiveData);
  EXPECT_CF_ERROR(fit_logistic(std::vector<double>{0, 1, 2}, std::vector<double>{1, 2, 3}),
                  ErrorCode::TooFewSamples);
  EXPECT_CF_ERROR(fit_logistic(std::vector<double>{0, 2, 1, 3}, std::vector<double>{1, 2, 3, 4}),
                  ErrorCode::NonMonotoneGrid);
}

TEST(FitLogistic, IterationCapReportsBestSoFar) {
  const LogisticModel truth = LogisticModel::create(100, 0.5, 10);
  std::vector<double> ts, ys;
  for (int i = 0; i < 30; ++i) {
    ts.push_back(i * 0.7);
    ys.push_back(logistic_eval(truth, ts.back()));
  }
  FitOptions opts;
  opts.max_iterations = 1;
  const LogisticFit fit =
      fit_logistic(ts, ys, LogisticModel::create(150, 0.1, 1), opts);
  EXPECT_FALSE(fit.diagnostics.converged);
  EXPECT_EQ(fit.diagnostics.iterations, 1);
  EXPECT_FALSE(fit.diagnostics.message.empty());
}

TEST(FitLogistic, PropertyIdempotentOnFittedModel) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> noise(0.0, 0.02);
  for (int trial = 0; trial < 10; ++trial) {
    const LogisticModel truth = random_model(rng);
    std::vector<double> ts, ys;
    const double horizon = 2.0 * inflection_time(truth) + 6.0 / truth.rate();
    for (int i = 0; i < 40; ++i) {
      ts.push_back(horizon * i / 39.0);
      ys.push_back(logistic_eval(truth, ts.back()) * (1.0 + noise(rng)));
    }
    const LogisticFit first = fit_logistic(ts, ys);
    ASSERT_TRUE(first.diagnostics.converged);
    std::vector<double> regenerated;
    for (double t : ts) regenerated.push_back(logistic_eval(first.model, t));
    const LogisticFit second = fit_logistic(ts, regenerated);
    EXPECT_TRUE(rel_close(second.model.capacity(), first.model.capacity(), 1e-8));
    EXPECT_TRUE(rel_close(second.model.rate(), first.model.rate(), 1e-8));
    EXPECT_TRUE(rel_close(second.model.y_init(), first.model.y_init(), 1e-8));
  }
}

TEST(InitialGuess, UsesInflatedMaxAndLogitRegression) {
  const LogisticModel truth = LogisticModel::create(10, 1.0, 1);
  std::vector<double> ts, ys;
  for (int i = 0; i < 10; ++i) {
    ts.push_back(i);
    ys.push_back(logistic_eval(truth, i));
  }
  const LogisticModel g = initial_guess(ts, ys);
  EXPECT_DOUBLE_EQ(g.capacity(), 1.05 * ys.back());
  EXPECT_GT(g.rate(), 0.0);
}
