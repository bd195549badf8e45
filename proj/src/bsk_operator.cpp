#include "bsk/bsk_operator.hpp"

#include <algorithm>
#include <cmath>

#include "bsk/basis.hpp"
#include "bsk/errors.hpp"
#include "bsk/norms.hpp"
#include "bsk/summation.hpp"

namespace bsk {
namespace {

void check_axis(const OperatorParams& params, int axis) {
  if (axis < 0 || axis >= params.d) throw DomainError("axis out of range");
}

// Composite rule for [lo, hi] split at the breakpoints of f on `axis`, with
// weights scaled so they sum to one (a mean rather than an integral).
AxisRule mean_rule(const ScalarField& f, int axis, double lo, double hi, const QuadratureRule& rule) {
  AxisRule axis_rule = composite_rule(make_partition(lo, hi, 1, f.breakpoints(axis)), rule);
  const double width = hi - lo;
  for (double& w : axis_rule.weights) w /= width;
  return axis_rule;
}

double tensor_sum(const ScalarField& f, std::span<const AxisRule* const> axes) {
  const std::size_t d = axes.size();
  std::vector<std::size_t> index(d, 0);
  std::vector<double> point(d);
  for (std::size_t i = 0; i < d; ++i) point[i] = axes[i]->nodes[0];
  CompensatedSum sum;
  while (true) {
    double w = 1.0;
    for (std::size_t i = 0; i < d; ++i) w *= axes[i]->weights[index[i]];
    sum += w * f.evaluate_unchecked(point);
    std::size_t axis = 0;
    for (; axis < d; ++axis) {
      if (++index[axis] < axes[axis]->size()) {
        point[axis] = axes[axis]->nodes[index[axis]];
        break;
      }
      index[axis] = 0;
      point[axis] = axes[axis]->nodes[0];
    }
    if (axis == d) break;
  }
  return sum.value();
}

double pow_abs(double v, double p) {
  v = std::abs(v);
  return p == 1.0 ? v : (p == 2.0 ? v * v : std::pow(v, p));
}

}  // namespace

MultiIndexK::MultiIndexK(std::vector<int> components, int n) : components_(std::move(components)) {
  if (components_.empty()) throw DomainError("multi-index must have at least one component");
  for (int k : components_)
    if (k < 0 || k > n) throw DomainError("multi-index component outside [0,n]");
}

Cell Cell::of(const OperatorParams& params, const MultiIndexK& k) {
  if (k.dimension() != params.d) throw DomainError("multi-index dimension does not match d");
  Cell cell{Eigen::VectorXd(params.d), Eigen::VectorXd(params.d)};
  const double h = 1.0 / (params.n + 1);
  for (int i = 0; i < params.d; ++i) {
    cell.lower(i) = k[i] * h;
    cell.upper(i) = k[i] == params.n ? 1.0 : (k[i] + 1) * h;
  }
  return cell;
}

double tensor_weight(const OperatorParams& params, const MultiIndexK& k, std::span<const double> x) {
  params.require_strict();
  if (k.dimension() != params.d) throw DomainError("multi-index dimension does not match d");
  check_in_cube(x, params.d);
  double w = 1.0;
  for (int i = 0; i < params.d; ++i) w *= stancu_basis(params, k[i], x[i]);
  return w;
}

double cell_mean(const ScalarField& f, const Cell& cell, const QuadratureRule& rule) {
  if (cell.dimension() != f.arity()) throw DomainError("cell dimension does not match field arity");
  std::vector<AxisRule> axes;
  for (int i = 0; i < cell.dimension(); ++i) {
    if (!(cell.lower(i) >= 0.0 && cell.upper(i) <= 1.0 && cell.lower(i) < cell.upper(i)))
      throw DomainError("cell must be a non-degenerate box inside the unit cube");
    axes.push_back(mean_rule(f, i, cell.lower(i), cell.upper(i), rule));
  }
  std::vector<const AxisRule*> pointers;
  for (const auto& a : axes) pointers.push_back(&a);
  return tensor_sum(f, pointers);
}

double weight_hypercube_integral(const OperatorParams& params, const MultiIndexK& k) {
  params.require_strict();
  if (k.dimension() != params.d) throw DomainError("multi-index dimension does not match d");
  double value = 1.0;
  for (int i = 0; i < params.d; ++i) value *= stancu_basis_integral<double>(params, k[i]);
  return value;
}

double moment_first(const OperatorParams& params, int axis, std::span<const double> x) {
  params.require_strict();
  check_axis(params, axis);
  check_in_cube(x, params.d);
  const double n = params.n;
  return n / (n + 1.0) * x[axis] + 1.0 / (2.0 * (n + 1.0));
}

double moment_second(const OperatorParams& params, int axis, std::span<const double> x) {
  params.require_strict();
  check_axis(params, axis);
  check_in_cube(x, params.d);
  const double n = params.n;
  const double r = params.r;
  const double xi = x[axis];
  const double spread = (1.0 + r * (r - 1.0) / n) * xi * (1.0 - xi) / n;
  return n * n / ((n + 1.0) * (n + 1.0)) * (xi * xi + spread) + (3.0 * n * xi + 1.0) / (3.0 * (n + 1.0) * (n + 1.0));
}

double central_second_moment(const OperatorParams& params, int axis, std::span<const double> x) {
  params.require_strict();
  check_axis(params, axis);
  check_in_cube(x, params.d);
  const double n = params.n;
  const double r = params.r;
  const double xi = x[axis];
  const double denominator = (n + 1.0) * (n + 1.0);
  return (n - 1.0 + r * (r - 1.0)) / denominator * xi * (1.0 - xi) + 1.0 / (3.0 * denominator);
}

BskOperator::BskOperator(OperatorParams params, ScalarField f, QuadratureRule rule, std::size_t term_budget)
    : params_(params), field_(std::move(f)), rule_(std::move(rule)) {
  if (field_.arity() != params_.d) throw DomainError("field arity does not match operator dimension");
  if (params_.d >= 2) params_.require_strict();
  const std::size_t terms = params_.term_count();
  if (terms > term_budget)
    throw BudgetError("(n+1)^d = " + std::to_string(terms) + " exceeds the term budget of " +
                      std::to_string(term_budget));

  const int n = params_.n;
  const int d = params_.d;
  const double h = 1.0 / (n + 1);
  std::vector<std::vector<AxisRule>> rules(d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k <= n; ++k) rules[i].push_back(mean_rule(field_, i, k * h, k == n ? 1.0 : (k + 1) * h, rule_));

  cell_means_.resize(static_cast<Eigen::Index>(terms));
  std::vector<int> k(d, 0);
  std::vector<const AxisRule*> axes(d);
  for (std::size_t flat = 0; flat < terms; ++flat) {
    for (int i = 0; i < d; ++i) axes[i] = &rules[i][k[i]];
    cell_means_(static_cast<Eigen::Index>(flat)) = tensor_sum(field_, axes);
    for (int i = 0; i < d; ++i) {
      if (++k[i] <= n) break;
      k[i] = 0;
    }
  }
}

double BskOperator::operator()(std::span<const double> x) const {
  check_in_cube(x, params_.d);
  const int d = params_.d;
  const int n = params_.n;
  std::vector<Vector<double>> rows;
  rows.reserve(d);
  for (int i = 0; i < d; ++i) rows.push_back(stancu_row(params_, x[i]));
  if (d == 1) {
    CompensatedSum sum;
    for (int k = 0; k <= n; ++k) sum += rows[0](k) * cell_means_(k);
    return sum.value();
  }
  CompensatedSum sum;
  std::vector<int> k(d, 0);
  const std::size_t terms = params_.term_count();
  for (std::size_t flat = 0; flat < terms; ++flat) {
    double w = 1.0;
    for (int i = 0; i < d && w != 0.0; ++i) w *= rows[i](k[i]);
    if (w != 0.0) sum += w * cell_means_(static_cast<Eigen::Index>(flat));
    for (int i = 0; i < d; ++i) {
      if (++k[i] <= n) break;
      k[i] = 0;
    }
  }
  return sum.value();
}

Eigen::VectorXd BskOperator::evaluate_on_grid(std::span<const std::vector<double>> axis_points) const {
  const int d = params_.d;
  const Eigen::Index size = params_.n + 1;
  if (static_cast<int>(axis_points.size()) != d) throw DomainError("grid dimension does not match d");
  for (const auto& axis : axis_points)
    if (axis.empty()) return Eigen::VectorXd();

  // Mode products: contract the leading axis, then rotate it to the back.
  Eigen::MatrixXd current = Eigen::Map<const Eigen::MatrixXd>(cell_means_.data(), size, cell_means_.size() / size);
  for (int i = 0; i < d; ++i) {
    const auto& points = axis_points[i];
    Eigen::MatrixXd weights(static_cast<Eigen::Index>(points.size()), size);
    for (std::size_t j = 0; j < points.size(); ++j) weights.row(static_cast<Eigen::Index>(j)) = stancu_row(params_, points[j]).transpose();
    Eigen::MatrixXd rotated = (weights * current).transpose();
    const Eigen::Index rows = i + 1 < d ? size : static_cast<Eigen::Index>(axis_points[0].size());
    current = Eigen::Map<const Eigen::MatrixXd>(rotated.data(), rows, rotated.size() / rows);
  }
  return Eigen::Map<const Eigen::VectorXd>(current.data(), current.size());
}

std::vector<AxisRule> BskOperator::norm_axes() const {
  std::vector<AxisRule> axes;
  for (int i = 0; i < params_.d; ++i)
    axes.push_back(composite_rule(make_partition(0.0, 1.0, params_.n + 1, field_.breakpoints(i)), rule_));
  return axes;
}

double BskOperator::norm_lp(double p) const {
  check_exponent(p);
  const auto axes = norm_axes();
  std::vector<std::vector<double>> nodes;
  for (const auto& a : axes) nodes.push_back(a.nodes);
  const Eigen::VectorXd values = evaluate_on_grid(nodes);
  CompensatedSum sum;
  Eigen::Index index = 0;
  for_each_tensor_node(std::span<const AxisRule>(axes), [&](std::span<const double>, double w) {
    sum += w * pow_abs(values(index++), p);
  });
  return finish_lp(sum.value(), p);
}

double BskOperator::error_lp(double p) const {
  check_exponent(p);
  if (params_.d == 1) return error_lp_univariate(p);
  const auto axes = norm_axes();
  std::vector<std::vector<double>> nodes;
  for (const auto& a : axes) nodes.push_back(a.nodes);
  const Eigen::VectorXd values = evaluate_on_grid(nodes);
  CompensatedSum sum;
  Eigen::Index index = 0;
  for_each_tensor_node(std::span<const AxisRule>(axes), [&](std::span<const double> x, double w) {
    sum += w * pow_abs(values(index++) - field_.evaluate_unchecked(x), p);
  });
  return finish_lp(sum.value(), p);
}

double BskOperator::error_lp_univariate(double p) const {
  const auto breaks = make_partition(0.0, 1.0, params_.n + 1, field_.breakpoints(0));
  auto error = [this](double x) {
    const double point[1] = {x};
    return (*this)(point) - field_.evaluate_unchecked(point);
  };
  CompensatedSum sum;
  std::vector<double> pieces;
  for (std::size_t piece = 0; piece + 1 < breaks.size(); ++piece) {
    const double a = breaks[piece];
    const double b = breaks[piece + 1];
    const double h = b - a;
    // Sample just inside the piece so one-sided values at jumps are not mixed in.
    std::vector<double> samples{a + 1e-13 * h};
    for (double t : rule_.nodes()) samples.push_back(a + h * t);
    samples.push_back(b - 1e-13 * h);
    pieces.assign(1, a);
    double left = samples[0];
    double left_value = error(left);
    for (std::size_t s = 1; s < samples.size(); ++s) {
      const double right = samples[s];
      const double right_value = error(right);
      if ((left_value < 0.0 && right_value > 0.0) || (left_value > 0.0 && right_value < 0.0)) {
        double lo = left;
        double hi = right;
        double lo_value = left_value;
        for (int iteration = 0; iteration < 200 && hi - lo > 1e-16; ++iteration) {
          const double mid = 0.5 * (lo + hi);
          const double mid_value = error(mid);
          if (mid_value == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((mid_value < 0.0) == (lo_value < 0.0)) {
            lo = mid;
            lo_value = mid_value;
          } else {
            hi = mid;
          }
        }
        pieces.push_back(0.5 * (lo + hi));
      }
      left = right;
      left_value = right_value;
    }
    pieces.push_back(b);
    for (std::size_t j = 0; j + 1 < pieces.size(); ++j) {
      const double lo = pieces[j];
      const double width = pieces[j + 1] - lo;
      if (width <= 0.0) continue;
      for (int q = 0; q < rule_.order(); ++q)
        sum += width * rule_.weights()[q] * pow_abs(error(lo + width * rule_.nodes()[q]), p);
    }
  }
  return finish_lp(sum.value(), p);
}

double BskOperator::error_sup(int points_per_axis) const {
  if (points_per_axis < 2) throw DomainError("sup grid needs at least two points per axis");
  std::vector<double> axis(points_per_axis);
  for (int j = 0; j < points_per_axis; ++j) axis[j] = j == points_per_axis - 1 ? 1.0 : double(j) / (points_per_axis - 1);
  std::vector<std::vector<double>> grid(params_.d, axis);
  const Eigen::VectorXd values = evaluate_on_grid(grid);
  std::vector<AxisRule> axes(params_.d, AxisRule{axis, std::vector<double>(axis.size(), 1.0)});
  double worst = 0.0;
  Eigen::Index index = 0;
  for_each_tensor_node(std::span<const AxisRule>(axes), [&](std::span<const double> x, double) {
    worst = std::max(worst, std::abs(values(index++) - field_.evaluate_unchecked(x)));
  });
  return worst;
}

double bsk_apply(const OperatorParams& params, const ScalarField& f, std::span<const double> x,
                 const QuadratureRule& rule, std::size_t term_budget) {
  params.require_strict();
  check_in_cube(x, params.d);
  return BskOperator(params, f, rule, term_budget)(x);
}

double bsk_apply_explicit(const OperatorParams& params, const ScalarField& f, double x, const QuadratureRule& rule) {
  if (params.d != 1 || f.arity() != 1) throw DomainError("bsk_apply_explicit is univariate");
  detail::check_unit_interval(x);
  const int n = params.n;
  const int r = params.r;
  const OperatorParams one_d(n, r, 1);
  auto mean = [&](int k) { return cell_mean(f, Cell::of(one_d, MultiIndexK({k}, n)), rule); };
  const Vector<double> p = bernstein_row(n - r, x);
  CompensatedSum sum;
  for (int k = 0; k <= n - r; ++k) {
    if (p(k) == 0.0) continue;
    sum += p(k) * ((1.0 - x) * mean(k) + x * mean(k + r));
  }
  return sum.value();
}

double kantorovich_apply(int n, const ScalarField& f, double x, const QuadratureRule& rule) {
  if (f.arity() != 1) throw DomainError("kantorovich_apply is univariate");
  const OperatorParams params(n, 0, 1);
  const Vector<double> p = bernstein_row(n, x);
  CompensatedSum sum;
  for (int k = 0; k <= n; ++k) {
    if (p(k) == 0.0) continue;
    sum += p(k) * cell_mean(f, Cell::of(params, MultiIndexK({k}, n)), rule);
  }
  return sum.value();
}

double bsb_apply(const OperatorParams& params, const ScalarField& f, double x) {
  if (f.arity() != 1) throw DomainError("bsb_apply is univariate");
  return bsb_apply(params, [&f](double t) { return f({t}); }, x);
}

}  // namespace bsk
