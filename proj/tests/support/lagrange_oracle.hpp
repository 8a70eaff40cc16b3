#pragma once

#include <span>

namespace cycleforge::testing {

/// Product-form Lagrange polynomial sum_i y_i prod_{j != i} (t - t_j) / (t_i - t_j).
/// Independent of the barycentric implementation.
inline double lagrange_product_form(std::span<const double> xs,
                                    std::span<const double> ys, double t) {
  double sum = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double basis = 1.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j != i) basis *= (t - xs[j]) / (xs[i] - xs[j]);
    }
    sum += ys[i] * basis;
  }
  return sum;
}

}  // namespace cycleforge::testing
