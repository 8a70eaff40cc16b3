#include "cycleforge/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cycleforge/error.hpp"
#include "cycleforge/format.hpp"

namespace cycleforge {

NodeSet NodeSet::create(std::vector<double> nodes, std::vector<double> values) {
  if (nodes.size() != values.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "node and value counts differ");
  }
  if (nodes.size() < 2) {
    throw Error(ErrorCode::TooFewSamples, "a node set needs at least 2 nodes");
  }
  for (double t : nodes) {
    if (!std::isfinite(t)) {
      throw Error(ErrorCode::InvalidArgument, "nodes must be finite");
    }
  }

  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return nodes[a] < nodes[b];
  });

  NodeSet ns;
  ns.nodes_.reserve(nodes.size());
  ns.values_.reserve(nodes.size());
  for (std::size_t i : order) {
    if (!ns.nodes_.empty() && ns.nodes_.back() == nodes[i]) {
      throw Error(ErrorCode::DuplicateNodes,
                  "node " + format_double(nodes[i]) + " appears twice");
    }
    ns.nodes_.push_back(nodes[i]);
    ns.values_.push_back(values[i]);
  }
  return ns;
}

std::string_view to_string(InterpolantKind kind) noexcept {
  switch (kind) {
    case InterpolantKind::LagrangeBarycentric: return "lagrange";
    case InterpolantKind::PiecewiseLinear: return "piecewise_linear";
  }
  return "unknown";
}

std::vector<double> barycentric_weights(std::span<const double> nodes) {
  std::vector<double> w(nodes.size(), 1.0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j == i) continue;
      const double d = nodes[i] - nodes[j];
      if (d == 0.0) {
        throw Error(ErrorCode::DuplicateNodes, "repeated node");
      }
      w[i] /= d;
    }
  }
  return w;
}

double barycentric_eval(std::span<const double> nodes,
                        std::span<const double> values,
                        std::span<const double> weights, double t) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double d = t - nodes[i];
    if (d == 0.0) return values[i];
    const double c = weights[i] / d;
    num += c * values[i];
    den += c;
  }
  return num / den;
}

Interpolant build_lagrange(const NodeSet& ns, std::size_t max_nodes) {
  if (ns.size() > max_nodes) {
    throw Error(ErrorCode::DegreeCapExceeded,
                std::to_string(ns.size()) + " nodes exceed the cap of " +
                    std::to_string(max_nodes) +
                    "; high-degree polynomials on equispaced nodes oscillate "
                    "(Runge), use the piecewise_linear interpolant instead");
  }
  return Interpolant(InterpolantKind::LagrangeBarycentric, ns,
                     barycentric_weights(ns.nodes()));
}

Interpolant build_piecewise_linear(const NodeSet& ns) {
  return Interpolant(InterpolantKind::PiecewiseLinear, ns, {});
}

namespace {

double eval_piecewise_linear(const NodeSet& ns, double t) {
  const auto xs = ns.nodes();
  const auto ys = ns.values();
  // First node strictly greater than t; t lies in [xs[hi-1], xs[hi]).
  auto it = std::upper_bound(xs.begin(), xs.end(), t);
  if (it == xs.end()) return ys.back();  // t == domain end
  const auto hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  if (t == xs[lo]) return ys[lo];
  const double frac = (t - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + frac * (ys[hi] - ys[lo]);
}

}  // namespace

double eval_interpolant(const Interpolant& ip, double t, Extrapolation policy) {
  const bool inside = t >= ip.domain_lo() && t <= ip.domain_hi();
  if (!inside) {
    const bool allowed = policy == Extrapolation::Allow &&
                         ip.kind() == InterpolantKind::LagrangeBarycentric &&
                         std::isfinite(t);
    if (!allowed) {
      throw Error(ErrorCode::OutOfDomain,
                  "t = " + format_double(t) + " outside [" +
                      format_double(ip.domain_lo()) + ", " +
                      format_double(ip.domain_hi()) + "]");
    }
  }
  switch (ip.kind()) {
    case InterpolantKind::LagrangeBarycentric:
      return barycentric_eval(ip.nodes().nodes(), ip.nodes().values(),
                              ip.barycentric_weights(), t);
    case InterpolantKind::PiecewiseLinear:
      return eval_piecewise_linear(ip.nodes(), t);
  }
  return 0.0;
}

double Interpolant::operator()(double t) const {
  return eval_interpolant(*this, t);
}

double lagrange_error_bound(double deriv_bound, const NodeSet& ns, double t) {
  if (!(deriv_bound >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "derivative bound must be non-negative");
  }
  double prod = 1.0;
  double factorial = 1.0;
  const auto xs = ns.nodes();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    prod *= (t - xs[i]);
    factorial *= static_cast<double>(i + 1);
  }
  return deriv_bound / factorial * std::abs(prod);
}

}  // namespace cycleforge
