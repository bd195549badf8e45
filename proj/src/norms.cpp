#include "bsk/norms.hpp"

#include <cmath>

#include "bsk/errors.hpp"
#include "bsk/summation.hpp"

namespace bsk {

void check_exponent(double p) {
  if (!(p >= 1.0) || std::isinf(p)) throw DomainError("exponent p must satisfy 1 <= p < infinity");
}

double finish_lp(double sum_of_powers, double p) {
  if (sum_of_powers <= 0.0) return 0.0;
  return p == 1.0 ? sum_of_powers : std::pow(sum_of_powers, 1.0 / p);
}

std::vector<AxisRule> field_axis_rules(const ScalarField& f, int cells, const QuadratureRule& rule) {
  std::vector<AxisRule> axes;
  axes.reserve(f.arity());
  for (int i = 0; i < f.arity(); ++i) {
    const auto breaks = f.breakpoints(i);
    axes.push_back(composite_rule(make_partition(0.0, 1.0, cells, breaks), rule));
  }
  return axes;
}

double lp_norm(const ScalarField& f, double p, int cells, const QuadratureRule& rule) {
  check_exponent(p);
  const auto axes = field_axis_rules(f, cells, rule);
  CompensatedSum sum;
  for_each_tensor_node(std::span<const AxisRule>(axes), [&](std::span<const double> x, double w) {
    const double v = std::abs(f.evaluate_unchecked(x));
    sum += w * (p == 1.0 ? v : std::pow(v, p));
  });
  return finish_lp(sum.value(), p);
}

}  // namespace bsk
