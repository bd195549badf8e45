#include "bsk/convergence.hpp"

#include <cmath>
#include <string>

#include "bsk/bounds.hpp"
#include "bsk/errors.hpp"
#include "bsk/norms.hpp"

namespace bsk {

ConvergenceConfig ConvergenceConfig::for_dimension(int d) {
  ConvergenceConfig config;
  config.d = d;
  config.grid = ModulusGrid::for_dimension(d);
  config.sup_points = d == 1 ? 1001 : d == 2 ? 101 : 33;
  return config;
}

std::optional<double> fit_order(std::span<const int> n, std::span<const double> error) {
  if (n.size() != error.size()) throw DomainError("fit_order needs one error per n");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(error[i] > kNumericalZero) || n[i] <= 0) continue;
    const double x = std::log(static_cast<double>(n[i]));
    const double y = std::log(error[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 3) return std::nullopt;
  const double denominator = count * sxx - sx * sx;
  if (denominator <= 0.0) return std::nullopt;
  return (count * sxy - sx * sy) / denominator;
}

ConvergenceReport run_convergence(const ConvergenceConfig& config) {
  if (config.d < 1) throw DomainError("dimension must be at least 1");
  if (config.r < 0) throw DomainError("r must be non-negative");
  if (config.n_list.empty()) throw EmptyInputError("n-list is empty");
  if (config.p_list.empty()) throw EmptyInputError("p-list is empty");
  for (double p : config.p_list) check_exponent(p);
  if (config.sup_points < 2) throw DomainError("sup grid needs at least two points per axis");
  for (std::size_t i = 0; i < config.n_list.size(); ++i) {
    if (i > 0 && config.n_list[i] <= config.n_list[i - 1])
      throw DomainError("n-list must be strictly increasing");
    if (config.n_list[i] < 0) throw DomainError("n must be non-negative");
    if (config.n_list[i] <= 2 * config.r)
      throw RegimeError("every n must satisfy n > 2r (n=" + std::to_string(config.n_list[i]) +
                        ", r=" + std::to_string(config.r) + ")");
  }
  for (int n : config.n_list)
    if (OperatorParams(n, config.r, config.d).term_count() > config.term_budget)
      throw BudgetError("(n+1)^d = " + std::to_string(OperatorParams(n, config.r, config.d).term_count()) +
                        " exceeds the term budget");

  const ScalarField f = make_field(config.function, config.d);
  const QuadratureRule rule = QuadratureRule::gauss_legendre(config.quad_order);

  ConvergenceReport report;
  report.config = config;
  for (int n : config.n_list) {
    const OperatorParams params(n, config.r, config.d);
    const BskOperator op(params, f, rule, config.term_budget);
    const double a_nr = compute_a_nr(params);
    const double error_sup = op.error_sup(config.sup_points);
    const double tau_delta = std::pow(a_nr, 1.0 / (2.0 * config.d));
    const double omega_delta = std::pow(n + 1.0, -1.0 / (2.0 * config.d));
    for (double p : config.p_list) {
      ConvergenceRow row;
      row.n = n;
      row.p = p;
      row.error_lp = op.error_lp(p);
      row.error_sup = error_sup;
      row.a_nr = a_nr;
      row.tau_scale = tau_modulus(f, tau_delta, p, config.grid);
      row.omega_scale = lp_modulus(f, omega_delta, p, config.grid);
      if (row.tau_scale > 0.0) row.ratio_tau = row.error_lp / row.tau_scale;
      if (row.omega_scale > 0.0) row.ratio_omega = row.error_lp / row.omega_scale;
      report.rows.push_back(row);
    }
  }

  for (double p : config.p_list) {
    std::vector<int> ns;
    std::vector<double> errors;
    for (const auto& row : report.rows) {
      if (row.p != p) continue;
      ns.push_back(row.n);
      errors.push_back(row.error_lp);
    }
    report.fits.push_back({p, fit_order(ns, errors)});
  }
  return report;
}

}  // namespace bsk
