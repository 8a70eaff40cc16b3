#pragma once

#include <random>

#include "cycleforge/logistic.hpp"

namespace cycleforge::testing {

/// Random valid logistic model: capacity in [1, 1000], rate in [0.05, 2],
/// y_init in [0.01, 0.45] * capacity (so doubling is always reachable).
inline LogisticModel random_model(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> log_cap(0.0, 3.0);
  std::uniform_real_distribution<double> rate(0.05, 2.0);
  std::uniform_real_distribution<double> frac(0.01, 0.45);
  const double k = std::pow(10.0, log_cap(rng));
  return LogisticModel::create(k, rate(rng), frac(rng) * k);
}

inline bool rel_close(double a, double b, double rel) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= rel * scale;
}

}  // namespace cycleforge::testing
