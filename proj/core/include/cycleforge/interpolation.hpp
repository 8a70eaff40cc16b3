#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace cycleforge {

/// Interpolation data with strictly increasing abscissas. `create` accepts
/// pairs in any order and sorts them; repeated abscissas are rejected.
class NodeSet {
 public:
  static NodeSet create(std::vector<double> nodes, std::vector<double> values);

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return nodes_.size(); }
  double front() const { return nodes_.front(); }
  double back() const { return nodes_.back(); }

 private:
  NodeSet() = default;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

enum class InterpolantKind { LagrangeBarycentric, PiecewiseLinear };

std::string_view to_string(InterpolantKind kind) noexcept;

enum class Extrapolation { Forbid, Allow };

/// Equispaced yearly nodes become unstable past degree 12 (Runge).
inline constexpr std::size_t kDefaultMaxLagrangeNodes = 13;

class Interpolant {
 public:
  InterpolantKind kind() const { return kind_; }
  const NodeSet& nodes() const { return nodes_; }
  /// Empty for PiecewiseLinear.
  std::span<const double> barycentric_weights() const { return weights_; }
  double domain_lo() const { return nodes_.front(); }
  double domain_hi() const { return nodes_.back(); }

  double operator()(double t) const;

 private:
  friend Interpolant build_lagrange(const NodeSet&, std::size_t);
  friend Interpolant build_piecewise_linear(const NodeSet&);
  friend double eval_interpolant(const Interpolant&, double, Extrapolation);

  Interpolant(InterpolantKind kind, NodeSet nodes, std::vector<double> weights)
      : kind_(kind), nodes_(std::move(nodes)), weights_(std::move(weights)) {}

  InterpolantKind kind_;
  NodeSet nodes_;
  std::vector<double> weights_;
};

/// w_i = 1 / prod_{j != i} (t_i - t_j), for nodes in any order.
std::vector<double> barycentric_weights(std::span<const double> nodes);

/// Second-kind barycentric formula. Node hits return the stored value.
double barycentric_eval(std::span<const double> nodes,
                        std::span<const double> values,
                        std::span<const double> weights, double t);

Interpolant build_lagrange(const NodeSet& ns,
                           std::size_t max_nodes = kDefaultMaxLagrangeNodes);
Interpolant build_piecewise_linear(const NodeSet& ns);

double eval_interpolant(const Interpolant& ip, double t,
                        Extrapolation policy = Extrapolation::Forbid);

/// M / (n+1)! * |prod_i (t - t_i)| where M bounds |h^(n+1)| and n+1 is the
/// node count.
double lagrange_error_bound(double deriv_bound, const NodeSet& ns, double t);

}  // namespace cycleforge
