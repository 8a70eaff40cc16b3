#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cycleforge/error.hpp"
#include "cycleforge/numerics.hpp"
#include "support/expect_error.hpp"

using namespace cycleforge;


TEST(FindRoot, Linear) {
  EXPECT_NEAR(find_root([](double x) { return x - 1.0; }, {0.0, 2.0}, 1e-12), 1.0,
              1e-12);
}

TEST(FindRoot, SquareRootOfTwo) {
  EXPECT_NEAR(find_root([](double x) { return x * x - 2.0; }, {1.0, 2.0}, 1e-12),
              std::sqrt(2.0), 1e-12);
}

TEST(FindRoot, LogisticDoublingLevel) {
  // K = 100, y_init = 10, r = 0.5: y(t) = 20 at t = 2 ln 2.25.
  auto y = [](double t) { return 100.0 / (1.0 + 9.0 * std::exp(-0.5 * t)); };
  const double x = find_root([&](double t) { return y(t) - 20.0; }, {0.0, 10.0}, 1e-12);
  EXPECT_NEAR(x, 1.6218604324326575, 1e-11);
}

TEST(FindRoot, EndpointRootReturnedExactly) {
  EXPECT_EQ(find_root([](double x) { return x; }, {0.0, 1.0}, 1e-12), 0.0);
  EXPECT_EQ(find_root([](double x) { return x - 1.0; }, {0.0, 1.0}, 1e-12), 1.0);
}

TEST(FindRoot, Errors) {
  EXPECT_CF_ERROR(find_root([](double x) { return x * x + 1.0; }, {-1, 1}, 1e-9), ErrorCode::NoSignChange);
  EXPECT_CF_ERROR(find_root([](double x) { return x; }, {1, 1}, 1e-9), ErrorCode::InvalidBracket);
  EXPECT_CF_ERROR(find_root([](double x) { return x; }, {2, -1}, 1e-9), ErrorCode::InvalidBracket);
}

TEST(FindRoot, TinyToleranceStillTerminates) {
  const double x = find_root([](double v) { return v - 0.3; }, {0.0, 1.0}, 1e-300);
  EXPECT_NEAR(x, 0.3, 1e-16);
}

TEST(FindRoot, PropertyResidualNoWorseThanNeighbours) {
  // Cubic (x - a)(x^2 + 1) with random root a.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> root(-5.0, 5.0);
  const double tol = 1e-10;
  for (int i = 0; i < 200; ++i) {
    const double a = root(rng);
    auto f = [a](double x) { return (x - a) * (x * x + 1.0); };
    const double x = find_root(f, {-10.0, 10.0}, tol);
    EXPECT_NEAR(x, a, tol);
    EXPECT_LE(std::abs(f(x)), std::max(std::abs(f(x - tol)), std::abs(f(x + tol))));
  }
}

TEST(SecondDifferences, Quadratic) {
  const std::vector<double> ts{0, 1, 2};
  const std::vector<double> ys{0, 1, 4};
  const auto d = second_differences(ts, ys);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_DOUBLE_EQ(d[0], 2.0);
}

TEST(SecondDifferences, LinearIsZero) {
  const std::vector<double> ts{0, 1, 2, 3};
  const auto d = second_differences(ts, ts);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0], 0.0);
  EXPECT_EQ(d[1], 0.0);
}

TEST(SecondDifferences, CubicCentral) {
  const std::vector<double> ts{0, 1, 2};
  const std::vector<double> ys{0, 1, 8};
  EXPECT_DOUBLE_EQ(second_differences(ts, ys)[0], 6.0);
}

TEST(SecondDifferences, Errors) {
  const std::vector<double> two{0, 1};
  EXPECT_CF_ERROR(second_differences(two, two), ErrorCode::TooFewSamples);
  const std::vector<double> bad{0, 2, 1};
  EXPECT_CF_ERROR(second_differences(bad, bad), ErrorCode::NonMonotoneGrid);
  const std::vector<double> dup{0, 1, 1};
  EXPECT_CF_ERROR(second_differences(dup, dup), ErrorCode::NonMonotoneGrid);
}

TEST(SecondDifferences, PropertyExactForQuadraticsOnRandomGrids) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_real_distribution<double> gap(0.05, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = coef(rng), b = coef(rng), c = coef(rng);
    std::vector<double> ts{coef(rng)};
    for (int i = 0; i < 20; ++i) ts.push_back(ts.back() + gap(rng));
    std::vector<double> ys;
    for (double t : ts) ys.push_back(a * t * t + b * t + c);
    for (double d : second_differences(ts, ys)) EXPECT_NEAR(d, 2.0 * a, 1e-10);
  }
}

TEST(SignChanges, Basic) {
  EXPECT_EQ(sign_change_indices(std::vector<double>{1, -1}, 0.0),
            (std::vector<std::size_t>{0}));
  EXPECT_TRUE(sign_change_indices(std::vector<double>{1, 1, 1}, 0.0).empty());
  EXPECT_TRUE(sign_change_indices(std::vector<double>{}, 0.0).empty());
}

TEST(SignChanges, NearZeroSuppressed) {
  EXPECT_EQ(sign_change_indices(std::vector<double>{2, 1e-12, -2}, 1e-9),
            (std::vector<std::size_t>{0}));
  // A lone near-zero blip between equal signs is no change.
  EXPECT_TRUE(sign_change_indices(std::vector<double>{2, -1e-12, 2}, 1e-9).empty());
}

TEST(SignChanges, DefaultToleranceIsRelative) {
  EXPECT_DOUBLE_EQ(default_zero_tolerance(std::vector<double>{-4, 2}), 4e-9);
  EXPECT_EQ(sign_change_indices(std::vector<double>{1e3, -1e-7, 1e3}).size(), 0u);
  EXPECT_EQ(sign_change_indices(std::vector<double>{1e3, -1e3, 1e3}).size(), 2u);
}

TEST(SignChanges, PropertyInvariantUnderPositiveScaling) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> v(30);
    for (double& x : v) x = val(rng);
    const double eps = 0.1;
    const double c = scale(rng);
    std::vector<double> scaled(v);
    for (double& x : scaled) x *= c;
    EXPECT_EQ(sign_change_indices(v, eps), sign_change_indices(scaled, eps * c));
  }
}
