#include "bsk/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bsk/errors.hpp"
#include "bsk/norms.hpp"
#include "bsk/quadrature.hpp"
#include "bsk/summation.hpp"

namespace bsk {
namespace {

double pow_abs(double v, double p) {
  v = std::abs(v);
  return p == 1.0 ? v : (p == 2.0 ? v * v : std::pow(v, p));
}

void check_grid(const ModulusGrid& grid) {
  if (grid.window_points < 2 || grid.h_points < 2 || grid.x_cells < 1 || grid.x_order < 1)
    throw DomainError("modulus grid resolutions must be positive (at least two samples)");
}

// Visits the tensor product of per-axis sample lists, axis 0 fastest.
template <class Visitor>
void for_each_sample(const std::vector<std::vector<double>>& axes, Visitor&& visitor) {
  const std::size_t d = axes.size();
  std::vector<std::size_t> index(d, 0);
  std::vector<double> point(d);
  for (std::size_t i = 0; i < d; ++i) point[i] = axes[i][0];
  while (true) {
    visitor(std::span<const double>(point));
    std::size_t axis = 0;
    for (; axis < d; ++axis) {
      if (++index[axis] < axes[axis].size()) {
        point[axis] = axes[axis][index[axis]];
        break;
      }
      index[axis] = 0;
      point[axis] = axes[axis][0];
    }
    if (axis == d) return;
  }
}

// Integral of |f(x+h) - f(x)|^p over {x : x, x+h in Q_d}.
double shifted_difference_integral(const ScalarField& f, std::span<const double> h, double p,
                                   const ModulusGrid& grid, const QuadratureRule& rule) {
  const int d = f.arity();
  std::vector<AxisRule> axes;
  for (int i = 0; i < d; ++i) {
    const double lo = std::max(0.0, -h[i]);
    const double hi = std::min(1.0, 1.0 - h[i]);
    if (!(hi > lo)) return 0.0;
    std::vector<double> extra = f.breakpoints(i);
    for (double s : f.breakpoints(i)) extra.push_back(s - h[i]);
    axes.push_back(composite_rule(make_partition(lo, hi, grid.x_cells, extra), rule));
  }
  std::vector<double> shifted(d);
  CompensatedSum sum;
  for_each_tensor_node(std::span<const AxisRule>(axes), [&](std::span<const double> x, double w) {
    for (int i = 0; i < d; ++i) shifted[i] = std::clamp(x[i] + h[i], 0.0, 1.0);
    sum += w * pow_abs(f.evaluate_unchecked(shifted) - f.evaluate_unchecked(x), p);
  });
  return sum.value();
}

// Largest shifted-difference integral over the delta-scaled lattice. Only
// the half space h_1 >= 0 is visited: h and -h give the same integral.
double max_over_lattice(const ScalarField& f, double delta, double p, const ModulusGrid& grid,
                        const QuadratureRule& rule) {
  const int d = f.arity();
  const int m = grid.h_points - 1;
  std::vector<std::vector<double>> axes(d);
  for (int j = 0; j <= m; ++j) axes[0].push_back(j == m ? delta : delta * j / m);
  for (int i = 1; i < d; ++i)
    for (int j = -m; j <= m; ++j) axes[i].push_back(std::abs(j) == m ? (j > 0 ? delta : -delta) : delta * j / m);
  double best = 0.0;
  for_each_sample(axes, [&](std::span<const double> h) {
    if (std::all_of(h.begin(), h.end(), [](double v) { return v == 0.0; })) return;
    best = std::max(best, shifted_difference_integral(f, h, p, grid, rule));
  });
  return best;
}

void check_delta_for_lp(double delta) {
  if (!(delta > 0.0)) throw DomainError("modulus step delta must be positive");
  if (delta > 1.0) throw DomainError("modulus step delta must not exceed 1");
}

double finite_difference(const ScalarField::Function& g, std::span<const double> x, int axis, double h) {
  std::vector<double> point(x.begin(), x.end());
  const double xi = x[axis];
  auto at = [&](double t) {
    point[axis] = t;
    return g(point);
  };
  if (xi - h >= 0.0 && xi + h <= 1.0) return (at(xi + h) - at(xi - h)) / (2.0 * h);
  if (xi - h < 0.0) return (-3.0 * at(xi) + 4.0 * at(xi + h) - at(xi + 2.0 * h)) / (2.0 * h);
  return (3.0 * at(xi) - 4.0 * at(xi - h) + at(xi - 2.0 * h)) / (2.0 * h);
}

bool partial_available(const ScalarField& f, const MultiIndexAlpha& alpha) {
  if (f.has_exact_partial(alpha)) return true;
  for (int i = 0; i < f.arity(); ++i)
    if (alpha.touches(i) && !f.smooth_along(i)) return false;
  return true;
}

// Mean of f over prod_i [lower_i, upper_i]; an axis with lower == upper is
// pinned to that coordinate.
double window_mean(const ScalarField& f, std::span<const double> lower, std::span<const double> upper,
                   const QuadratureRule& rule) {
  const int d = f.arity();
  std::vector<AxisRule> axes;
  for (int i = 0; i < d; ++i) {
    if (upper[i] <= lower[i]) {
      axes.push_back(AxisRule{{lower[i]}, {1.0}});
      continue;
    }
    AxisRule axis = composite_rule(make_partition(lower[i], upper[i], 1, f.breakpoints(i)), rule);
    const double width = upper[i] - lower[i];
    for (double& w : axis.weights) w /= width;
    axes.push_back(std::move(axis));
  }
  CompensatedSum sum;
  for_each_tensor_node(std::span<const AxisRule>(axes),
                       [&](std::span<const double> x, double w) { sum += w * f.evaluate_unchecked(x); });
  return sum.value();
}

// ||f - g||_p and |g|_{W_1^p} for the window mean g of radius rho.
double steklov_candidate(const ScalarField& f, double rho, double t, double p, const ModulusGrid& grid) {
  const int d = f.arity();
  const QuadratureRule inner = QuadratureRule::gauss_legendre(8);
  const QuadratureRule outer = QuadratureRule::gauss_legendre(grid.x_order);
  const double half = 0.5 * rho;

  std::vector<AxisRule> axes;
  for (int i = 0; i < d; ++i) {
    std::vector<double> extra{half, 1.0 - half};
    for (double s : f.breakpoints(i)) {
      extra.push_back(s);
      extra.push_back(s - half);
      extra.push_back(s + half);
    }
    axes.push_back(composite_rule(make_partition(0.0, 1.0, grid.x_cells, extra), outer));
  }

  std::vector<double> lower(d), upper(d), pinned_lo(d), pinned_hi(d);
  CompensatedSum distance;
  std::vector<CompensatedSum> gradient(d);
  for_each_tensor_node(std::span<const AxisRule>(axes), [&](std::span<const double> x, double w) {
    for (int i = 0; i < d; ++i) {
      lower[i] = std::max(0.0, x[i] - half);
      upper[i] = std::min(1.0, x[i] + half);
    }
    const double g = window_mean(f, lower, upper, inner);
    distance += w * pow_abs(f.evaluate_unchecked(x) - g, p);
    for (int i = 0; i < d; ++i) {
      const double width = upper[i] - lower[i];
      const double moves_lower = x[i] - half > 0.0 ? 1.0 : 0.0;
      const double moves_upper = x[i] + half < 1.0 ? 1.0 : 0.0;
      pinned_lo = lower;
      pinned_hi = upper;
      double derivative = -(moves_upper - moves_lower) / width * g;
      if (moves_upper != 0.0) {
        pinned_lo[i] = pinned_hi[i] = upper[i];
        derivative += window_mean(f, pinned_lo, pinned_hi, inner) / width;
      }
      if (moves_lower != 0.0) {
        pinned_lo[i] = pinned_hi[i] = lower[i];
        derivative -= window_mean(f, pinned_lo, pinned_hi, inner) / width;
      }
      gradient[i] += w * pow_abs(derivative, p);
    }
  });
  double seminorm = 0.0;
  for (const auto& gi : gradient) seminorm += finish_lp(gi.value(), p);
  return finish_lp(distance.value(), p) + t * seminorm;
}

}  // namespace

ModulusGrid ModulusGrid::for_dimension(int d) {
  if (d <= 1) return ModulusGrid{};
  if (d == 2) return ModulusGrid{33, 17, 32, 4};
  return ModulusGrid{9, 9, 8, 4};
}

ModulusGrid ModulusGrid::refined() const {
  return ModulusGrid{2 * window_points - 1, 2 * h_points - 1, 2 * x_cells, x_order};
}

double lp_modulus(const ScalarField& f, double delta, double p, const ModulusGrid& grid) {
  const double values[1] = {delta};
  return lp_modulus_curve(f, values, p, grid).front();
}

std::vector<double> lp_modulus_curve(const ScalarField& f, std::span<const double> deltas, double p,
                                     const ModulusGrid& grid) {
  check_exponent(p);
  check_grid(grid);
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    check_delta_for_lp(deltas[j]);
    if (j > 0 && deltas[j] < deltas[j - 1]) throw DomainError("modulus steps must be ascending");
  }
  const QuadratureRule rule = QuadratureRule::gauss_legendre(grid.x_order);
  std::vector<double> values;
  double running = 0.0;
  for (double delta : deltas) {
    running = std::max(running, max_over_lattice(f, delta, p, grid, rule));
    values.push_back(finish_lp(running, p));
  }
  return values;
}

double local_modulus(const ScalarField& f, std::span<const double> x, double delta, const ModulusGrid& grid) {
  check_in_cube(x, f.arity());
  if (!(delta > 0.0)) throw DomainError("modulus step delta must be positive");
  check_grid(grid);
  const int d = f.arity();
  const int m = grid.window_points - 1;
  std::vector<std::vector<double>> axes(d);
  for (int i = 0; i < d; ++i) {
    const double lo = std::max(0.0, x[i] - 0.5 * delta);
    const double hi = std::min(1.0, x[i] + 0.5 * delta);
    auto& samples = axes[i];
    for (int j = 0; j <= m; ++j) samples.push_back(j == m ? hi : lo + (hi - lo) * j / m);
    for (double s : f.breakpoints(i, true))
      if (s > lo && s < hi) samples.push_back(s);
  }
  double lowest = std::numeric_limits<double>::infinity();
  double highest = -lowest;
  for_each_sample(axes, [&](std::span<const double> t) {
    const double v = f.evaluate_unchecked(t);
    lowest = std::min(lowest, v);
    highest = std::max(highest, v);
  });
  return highest - lowest;
}

double tau_modulus(const ScalarField& f, double delta, double p, const ModulusGrid& grid) {
  check_exponent(p);
  if (!(delta > 0.0)) throw DomainError("modulus step delta must be positive");
  check_grid(grid);
  const int d = f.arity();
  const double half = 0.5 * delta;
  const QuadratureRule rule = QuadratureRule::gauss_legendre(grid.x_order);
  std::vector<AxisRule> axes;
  for (int i = 0; i < d; ++i) {
    std::vector<double> extra{half, 1.0 - half};
    for (double s : f.breakpoints(i, true)) {
      extra.push_back(s);
      extra.push_back(s - half);
      extra.push_back(s + half);
    }
    axes.push_back(composite_rule(make_partition(0.0, 1.0, grid.x_cells, extra), rule));
  }
  CompensatedSum sum;
  for_each_tensor_node(std::span<const AxisRule>(axes), [&](std::span<const double> x, double w) {
    sum += w * pow_abs(local_modulus(f, x, delta, grid), p);
  });
  return finish_lp(sum.value(), p);
}

ScalarField mixed_partial(const ScalarField& f, const MultiIndexAlpha& alpha) {
  if (alpha.dimension() != f.arity()) throw DomainError("multi-index dimension does not match field arity");
  if (alpha.order() < 1) throw DomainError("mixed_partial requires |alpha| >= 1");
  if (auto exact = f.exact_partial(alpha)) return *exact;
  for (int i = 0; i < f.arity(); ++i)
    if (alpha.touches(i) && !f.smooth_along(i))
      throw DerivativeUnavailable("derivative " + alpha.to_string() + " of '" + f.label() +
                                  "' crosses a jump or kink along x" + std::to_string(i + 1));

  // Rounding in a nested difference grows like eps / h^|alpha|, so higher
  // orders use a larger step.
  const double h = alpha.order() == 1 ? 1e-5
                                      : std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (alpha.order() + 2));
  ScalarField::Function current = [f](std::span<const double> x) { return f.evaluate_unchecked(x); };
  for (int i = 0; i < f.arity(); ++i) {
    if (!alpha.touches(i)) continue;
    current = [inner = std::move(current), i, h](std::span<const double> x) {
      return finite_difference(inner, x, i, h);
    };
  }
  ScalarField result(f.arity(), std::move(current), "D" + alpha.to_string() + " " + f.label());
  for (const auto& s : f.singularities())
    if (!alpha.touches(s.axis) && s.kind != SingularityKind::extremum) result.add_singularity(s);
  return result;
}

bool has_all_mixed_partials(const ScalarField& f) {
  for (const auto& alpha : MultiIndexAlpha::all_nonzero(f.arity()))
    if (!partial_available(f, alpha)) return false;
  return true;
}

double sobolev_seminorm(const ScalarField& f, double p, const ModulusGrid& grid) {
  check_exponent(p);
  check_grid(grid);
  const QuadratureRule rule = QuadratureRule::gauss_legendre(grid.x_order);
  double total = 0.0;
  for (int i = 0; i < f.arity(); ++i)
    total += lp_norm(mixed_partial(f, MultiIndexAlpha::unit(f.arity(), i)), p, grid.x_cells, rule);
  return total;
}

std::vector<double> default_smoothing_radii(int count) {
  std::vector<double> radii;
  if (count <= 0) return radii;
  if (count == 1) return {0.25};
  const double ratio = std::pow(0.25 / 1e-3, 1.0 / (count - 1));
  for (int j = 0; j < count; ++j) radii.push_back(j == count - 1 ? 0.25 : 1e-3 * std::pow(ratio, j));
  return radii;
}

KFunctionalEstimate kfunctional_upper(const ScalarField& f, double t, double p, std::span<const double> radii,
                                      const ModulusGrid& grid) {
  check_exponent(p);
  check_grid(grid);
  if (!(t > 0.0)) throw DomainError("K-functional parameter t must be positive");
  if (radii.empty()) throw EmptyInputError("K-functional estimate needs at least one smoothing radius");

  std::optional<KFunctionalEstimate> best;
  bool differentiable = true;
  for (int i = 0; i < f.arity(); ++i)
    if (!partial_available(f, MultiIndexAlpha::unit(f.arity(), i))) differentiable = false;
  if (differentiable) best = KFunctionalEstimate{t * sobolev_seminorm(f, p, grid), std::nullopt};

  for (double rho : radii) {
    if (!(rho > 0.0 && rho <= 1.0)) continue;
    const double value = steklov_candidate(f, rho, t, p, grid);
    if (!best || value < best->value) best = KFunctionalEstimate{value, rho};
  }
  if (!best) throw EmptyInputError("no admissible K-functional candidate for '" + f.label() + "'");
  return *best;
}

TauPropertyReport tau_property_check(const ScalarField& f, double p, std::span<const double> deltas, double lambda,
                                     const ModulusGrid& grid) {
  check_exponent(p);
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    if (!(deltas[j] > 0.0)) throw DomainError("deltas must be positive");
    if (j > 0 && deltas[j] < deltas[j - 1]) throw DomainError("deltas must be sorted ascending");
  }
  const int d = f.arity();
  // Relative slack for summation-order noise only.
  auto leq = [](double a, double b) { return a <= b + 1e-12 * std::max(1.0, std::abs(b)); };

  TauPropertyReport report;
  report.deltas.assign(deltas.begin(), deltas.end());
  for (double delta : deltas) report.tau.push_back(tau_modulus(f, delta, p, grid));
  for (std::size_t j = 1; j < report.tau.size(); ++j)
    if (!leq(report.tau[j - 1], report.tau[j])) report.monotone = false;

  report.scaling_factor = std::pow(2.0 * std::floor(lambda) + 2.0, d + 1);
  for (std::size_t j = 0; j < deltas.size(); ++j) {
    report.scaled_tau.push_back(tau_modulus(f, lambda * deltas[j], p, grid));
    if (!leq(report.scaled_tau[j], report.scaling_factor * report.tau[j])) report.scaling = false;
  }

  if (has_all_mixed_partials(f)) {
    const QuadratureRule rule = QuadratureRule::gauss_legendre(grid.x_order);
    std::vector<std::pair<int, double>> norms;
    for (const auto& alpha : MultiIndexAlpha::all_nonzero(d))
      norms.emplace_back(alpha.order(), lp_norm(mixed_partial(f, alpha), p, grid.x_cells, rule));
    bool holds = true;
    for (std::size_t j = 0; j < deltas.size(); ++j) {
      double bound = 0.0;
      for (const auto& [order, norm] : norms) bound += std::pow(deltas[j], order) * norm;
      bound *= 2.0;
      report.derivative_bound.push_back(bound);
      if (!leq(report.tau[j], bound)) holds = false;
    }
    report.derivative = holds;
  }
  return report;
}

std::string to_string(ModulusKind kind) {
  switch (kind) {
    case ModulusKind::omega_lp: return "omega";
    case ModulusKind::local: return "local";
    case ModulusKind::tau: return "tau";
    case ModulusKind::sobolev_seminorm: return "sobolev";
    case ModulusKind::kfunctional_upper: return "kfunc";
  }
  return "unknown";
}

ModulusKind modulus_kind_from_string(const std::string& name) {
  for (auto kind : {ModulusKind::omega_lp, ModulusKind::local, ModulusKind::tau, ModulusKind::sobolev_seminorm,
                    ModulusKind::kfunctional_upper})
    if (to_string(kind) == name) return kind;
  throw DomainError("unknown modulus kind '" + name + "'");
}

ModulusReport compute_modulus(ModulusKind kind, const ScalarField& f, double delta, double p,
                              const ModulusGrid& grid, std::span<const double> point) {
  ModulusReport report{kind, delta, p, 0.0, grid, {}};
  switch (kind) {
    case ModulusKind::omega_lp:
      report.value = lp_modulus(f, delta, p, grid);
      break;
    case ModulusKind::local:
      report.point.assign(point.begin(), point.end());
      report.value = local_modulus(f, point, delta, grid);
      break;
    case ModulusKind::tau:
      report.value = tau_modulus(f, delta, p, grid);
      break;
    case ModulusKind::sobolev_seminorm:
      report.value = sobolev_seminorm(f, p, grid);
      break;
    case ModulusKind::kfunctional_upper: {
      const auto radii = default_smoothing_radii();
      report.value = kfunctional_upper(f, delta, p, radii, grid).value;
      break;
    }
  }
  return report;
}

}  // namespace bsk
