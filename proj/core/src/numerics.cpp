#include "cycleforge/numerics.hpp"

#include <algorithm>
#include <optional>

namespace cycleforge {

std::vector<double> second_differences(std::span<const double> ts,
                                       std::span<const double> ys) {
  if (ts.size() != ys.size()) {
    throw Error(ErrorCode::InvalidArgument, "ts and ys differ in length");
  }
  if (ts.size() < 3) {
    throw Error(ErrorCode::TooFewSamples, "need at least 3 samples");
  }
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (!(ts[i - 1] < ts[i])) {
      throw Error(ErrorCode::NonMonotoneGrid,
                  "abscissas must be strictly increasing (index " +
                      std::to_string(i) + ")");
    }
  }

  std::vector<double> out;
  out.reserve(ts.size() - 2);
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    const double h_left = ts[i] - ts[i - 1];
    const double h_right = ts[i + 1] - ts[i];
    const double slope_left = (ys[i] - ys[i - 1]) / h_left;
    const double slope_right = (ys[i + 1] - ys[i]) / h_right;
    out.push_back(2.0 * (slope_right - slope_left) / (h_left + h_right));
  }
  return out;
}

double default_zero_tolerance(std::span<const double> vals) {
  double peak = 0.0;
  for (double v : vals) peak = std::max(peak, std::abs(v));
  return 1e-9 * peak;
}

std::vector<std::size_t> sign_change_indices(std::span<const double> vals,
                                             double eps) {
  if (eps < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "eps must be non-negative");
  }
  std::vector<std::size_t> out;
  std::optional<std::size_t> last;  // last index with |v| > eps
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!(std::abs(vals[i]) > eps)) continue;
    if (last && ((vals[*last] > 0.0) != (vals[i] > 0.0))) {
      out.push_back(*last);
    }
    last = i;
  }
  return out;
}

std::vector<std::size_t> sign_change_indices(std::span<const double> vals) {
  return sign_change_indices(vals, default_zero_tolerance(vals));
}

}  // namespace cycleforge
