#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "cycleforge/error.hpp"

namespace cycleforge {

template <typename F>
concept ScalarFunction = requires(F f, double x) {
  { f(x) } -> std::convertible_to<double>;
};

struct Bracket {
  double lo;
  double hi;
};

/// Bisection on a sign-changing bracket. Terminates when the bracket is no
/// wider than `tol` (or cannot be split further in double precision) and
/// returns its midpoint. An endpoint that is an exact zero is returned as-is.
template <ScalarFunction F>
double find_root(F&& f, Bracket bracket, double tol) {
  if (!(bracket.lo < bracket.hi)) {
    throw Error(ErrorCode::InvalidBracket, "bracket requires lo < hi");
  }
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  }
  double lo = bracket.lo;
  double hi = bracket.hi;
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw Error(ErrorCode::NoSignChange,
                "f(lo) and f(hi) have the same sign");
  }
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

/// Three-point second-derivative estimates at the interior samples of a
/// (possibly nonuniform) grid. Result has ts.size() - 2 entries.
std::vector<double> second_differences(std::span<const double> ts,
                                       std::span<const double> ys);

/// Default zero band for sign detection: 1e-9 * max |vals|.
double default_zero_tolerance(std::span<const double> vals);

/// Indices i at which the sign of `vals` flips. Entries within [-eps, eps]
/// count as zero and are skipped; a flip across such a run is reported at the
/// last significant index before it.
std::vector<std::size_t> sign_change_indices(std::span<const double> vals,
                                             double eps);
std::vector<std::size_t> sign_change_indices(std::span<const double> vals);

}  // namespace cycleforge
