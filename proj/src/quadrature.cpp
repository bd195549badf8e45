#include "bsk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bsk/errors.hpp"

namespace bsk {

QuadratureRule QuadratureRule::gauss_legendre(int order) {
  if (order < 1 || order > 128) throw DomainError("Gauss-Legendre order must lie in [1,128]");
  std::vector<double> nodes(order);
  std::vector<double> weights(order);
  // Newton on P_order over [-1,1], symmetric pairs, then map to [0,1].
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double derivative = 0.0;
    for (int iteration = 0; iteration < 100; ++iteration) {
      double p0 = 1.0;
      double p1 = z;
      for (int j = 2; j <= order; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      derivative = order * (z * p1 - p0) / (z * z - 1.0);
      const double step = p1 / derivative;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = z;
    for (int j = 2; j <= order; ++j) {
      const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    derivative = order * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * derivative * derivative);
    nodes[i] = 0.5 * (1.0 - z);
    nodes[order - 1 - i] = 0.5 * (1.0 + z);
    weights[i] = 0.5 * w;
    weights[order - 1 - i] = 0.5 * w;
  }
  if (order % 2 == 1) nodes[order / 2] = 0.5;
  return QuadratureRule(std::move(nodes), std::move(weights));
}

std::vector<double> make_partition(double lo, double hi, int cells, std::span<const double> extra) {
  if (!(hi > lo)) return {lo, hi};
  cells = std::max(cells, 1);
  std::vector<double> points;
  points.reserve(cells + 1 + extra.size());
  for (int i = 0; i <= cells; ++i) points.push_back(i == cells ? hi : lo + (hi - lo) * i / cells);
  for (double e : extra)
    if (e > lo && e < hi) points.push_back(e);
  std::sort(points.begin(), points.end());
  const double merge = 1e-14 * std::max(1.0, hi - lo);
  std::vector<double> merged;
  merged.reserve(points.size());
  for (double p : points) {
    if (!merged.empty() && p - merged.back() <= merge) {
      // Keep the exact endpoints.
      if (p == hi) merged.back() = hi;
      continue;
    }
    merged.push_back(p);
  }
  return merged;
}

AxisRule composite_rule(std::span<const double> breakpoints, const QuadratureRule& rule) {
  AxisRule axis;
  if (breakpoints.size() < 2) return axis;
  const std::size_t pieces = breakpoints.size() - 1;
  axis.nodes.reserve(pieces * rule.order());
  axis.weights.reserve(pieces * rule.order());
  for (std::size_t i = 0; i < pieces; ++i) {
    const double a = breakpoints[i];
    const double h = breakpoints[i + 1] - a;
    if (h <= 0.0) continue;
    for (int j = 0; j < rule.order(); ++j) {
      axis.nodes.push_back(a + h * rule.nodes()[j]);
      axis.weights.push_back(h * rule.weights()[j]);
    }
  }
  return axis;
}

}  // namespace bsk
