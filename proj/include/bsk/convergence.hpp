#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bsk/bsk_operator.hpp"
#include "bsk/function_spec.hpp"
#include "bsk/moduli.hpp"

namespace bsk {

struct ConvergenceConfig {
  FunctionSpec function;
  int r = 0;
  int d = 1;
  std::vector<int> n_list;
  std::vector<double> p_list{1.0};
  int quad_order = QuadratureRule::kDefaultOrder;
  ModulusGrid grid;              // resolution of tau and omega
  int sup_points = 1001;         // per axis, for error_sup
  std::size_t term_budget = kDefaultTermBudget;

  /// Defaults for dimension d: ModulusGrid::for_dimension(d) and a sup grid
  /// of 1001, 101 or 33 points per axis.
  static ConvergenceConfig for_dimension(int d);
};

struct ConvergenceRow {
  int n = 0;
  double p = 1.0;
  double error_lp = 0.0;     // ||K f - f||_p
  double error_sup = 0.0;    // max |K f - f| on the sup grid
  double a_nr = 0.0;
  double tau_scale = 0.0;    // tau_1(f, A_{n,r}^{1/(2d)})_p
  double omega_scale = 0.0;  // omega_1(f, (n+1)^{-1/(2d)})_p
  std::optional<double> ratio_tau;    // error_lp / tau_scale
  std::optional<double> ratio_omega;  // error_lp / omega_scale
};

struct OrderFit {
  double p = 1.0;
  std::optional<double> order;  // slope of log error_lp against log n
};

struct ConvergenceReport {
  ConvergenceConfig config;
  std::vector<ConvergenceRow> rows;  // by n, then by position in p_list
  std::vector<OrderFit> fits;        // one per p
};

/// Errors below this are treated as exact zeros when fitting orders.
inline constexpr double kNumericalZero = 1e-13;

/// Least-squares slope of log(error) against log(n) over the pairs with
/// error > kNumericalZero; empty unless at least three remain.
std::optional<double> fit_order(std::span<const int> n, std::span<const double> error);

/// Runs the sweep. Every n must satisfy n > 2r (RegimeError) and the n-list
/// must be strictly increasing (DomainError); BudgetError propagates.
ConvergenceReport run_convergence(const ConvergenceConfig& config);

}  // namespace bsk
