#pragma once

#include <span>
#include <vector>

namespace bsk {

/// Gauss-Legendre rule mapped onto [0,1].
class QuadratureRule {
 public:
  static constexpr int kDefaultOrder = 8;

  /// order = number of nodes; exact for polynomials of degree <= 2*order-1.
  static QuadratureRule gauss_legendre(int order = kDefaultOrder);

  int order() const noexcept { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  template <class Function>
  double integrate(Function&& f, double a, double b) const {
    const double h = b - a;
    double total = 0.0;
    for (std::size_t j = 0; j < nodes_.size(); ++j) total += weights_[j] * f(a + h * nodes_[j]);
    return total * h;
  }

 private:
  QuadratureRule(std::vector<double> nodes, std::vector<double> weights)
      : nodes_(std::move(nodes)), weights_(std::move(weights)) {}

  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Nodes and weights of a composite rule along one axis.
struct AxisRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Sorted breakpoints of [lo, hi]: `cells` equal pieces plus every entry of
/// `extra` strictly inside (lo, hi). Near-duplicates are merged.
std::vector<double> make_partition(double lo, double hi, int cells, std::span<const double> extra = {});

/// Rule applied on every piece between consecutive breakpoints.
AxisRule composite_rule(std::span<const double> breakpoints, const QuadratureRule& rule);

/// Visits every node of the tensor product of `axes` with axis 0 varying
/// fastest. visitor(std::span<const double> point, double weight).
template <class Visitor>
void for_each_tensor_node(std::span<const AxisRule> axes, Visitor&& visitor) {
  const std::size_t d = axes.size();
  for (const auto& axis : axes)
    if (axis.size() == 0) return;
  std::vector<std::size_t> index(d, 0);
  std::vector<double> point(d);
  for (std::size_t i = 0; i < d; ++i) point[i] = axes[i].nodes[0];
  while (true) {
    double weight = 1.0;
    for (std::size_t i = 0; i < d; ++i) weight *= axes[i].weights[index[i]];
    visitor(std::span<const double>(point), weight);
    std::size_t axis = 0;
    while (axis < d) {
      if (++index[axis] < axes[axis].size()) {
        point[axis] = axes[axis].nodes[index[axis]];
        break;
      }
      index[axis] = 0;
      point[axis] = axes[axis].nodes[0];
      ++axis;
    }
    if (axis == d) return;
  }
}

}  // namespace bsk
