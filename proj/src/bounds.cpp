#include "bsk/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "bsk/errors.hpp"
#include "bsk/norms.hpp"

namespace bsk {

double compute_a_nr(const OperatorParams& params) {
  params.require_strict();
  const double n = params.n;
  const double r = params.r;
  return (3.0 * n + 1.0 + 3.0 * r * (r - 1.0)) / (12.0 * (n + 1.0) * (n + 1.0));
}

double compute_m_r(int r, int d) {
  if (r < 0) throw DomainError("r must be non-negative");
  if (d < 1) throw DomainError("d must be at least 1");
  if (r <= 1) return 1.0;
  return std::pow((2.0 * r + 2.0) / (r + 3.0), d);
}

double compute_b_r(int r) {
  if (r < 0) throw DomainError("r must be non-negative");
  if (r <= 1) return 0.25;
  return (3.0 * r * r + 3.0 * r + 4.0) / (24.0 * (r + 1.0));
}

BoundQuantities BoundQuantities::of(const OperatorParams& params) {
  return BoundQuantities{compute_a_nr(params), compute_m_r(params.r, params.d), compute_b_r(params.r), params};
}

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::tau_estimate: return "tau_estimate";
    case TheoremId::smooth_estimate: return "smooth_estimate";
    case TheoremId::omega_estimate: return "omega_estimate";
    case TheoremId::lp_norm_bound: return "lp_norm_bound";
  }
  return "unknown";
}

TheoremId theorem_from_string(const std::string& name) {
  for (auto id : {TheoremId::tau_estimate, TheoremId::smooth_estimate, TheoremId::omega_estimate,
                  TheoremId::lp_norm_bound})
    if (to_string(id) == name) return id;
  if (name == "tau") return TheoremId::tau_estimate;
  if (name == "smooth") return TheoremId::smooth_estimate;
  if (name == "omega") return TheoremId::omega_estimate;
  if (name == "lpnorm" || name == "norm") return TheoremId::lp_norm_bound;
  throw DomainError("unknown theorem '" + name + "'");
}

std::vector<int> default_sweep(int d) {
  if (d <= 1) return {8, 16, 32, 64, 128, 256};
  if (d == 2) return {8, 16, 32};
  return {8, 16};
}

BoundRatioReport verify_theorem(TheoremId theorem, const ScalarField& f, int r, std::span<const int> n_list,
                                double p, const VerifyOptions& options) {
  check_exponent(p);
  if (n_list.empty()) throw EmptyInputError("verify_theorem needs a non-empty n sweep");
  const int d = f.arity();
  for (int n : n_list) OperatorParams(n, r, d).require_strict();
  const ModulusGrid grid = options.grid.value_or(ModulusGrid::for_dimension(d));
  const double root = 1.0 / (2.0 * d);

  BoundRatioReport report;
  report.theorem = theorem;
  report.p = p;
  report.r = r;
  report.d = d;
  report.function = f.label();

  // n-independent pieces of the right-hand sides.
  std::vector<std::pair<int, double>> partial_norms;
  double f_norm = 0.0;
  if (theorem == TheoremId::smooth_estimate) {
    for (const auto& alpha : MultiIndexAlpha::all_nonzero(d))
      partial_norms.emplace_back(alpha.order(), lp_norm(mixed_partial(f, alpha), p, grid.x_cells,
                                                        QuadratureRule::gauss_legendre(grid.x_order)));
  }
  if (theorem == TheoremId::lp_norm_bound) f_norm = lp_norm(f, p, d <= 2 ? 64 : 16, options.rule);

  for (int n : n_list) {
    const OperatorParams params(n, r, d);
    const BskOperator op(params, f, options.rule, options.term_budget);
    BoundRatioRow row;
    row.n = n;
    switch (theorem) {
      case TheoremId::tau_estimate:
        row.lhs = op.error_lp(p);
        row.rhs = tau_modulus(f, std::pow(compute_a_nr(params), root), p, grid);
        break;
      case TheoremId::smooth_estimate:
        row.lhs = op.error_lp(p);
        for (const auto& [order, norm] : partial_norms) row.rhs += std::pow(n + 1.0, -order * root) * norm;
        break;
      case TheoremId::omega_estimate:
        row.lhs = op.error_lp(p);
        row.rhs = lp_modulus(f, std::pow(n + 1.0, -root), p, grid);
        break;
      case TheoremId::lp_norm_bound:
        row.lhs = op.norm_lp(p);
        row.rhs = std::pow(compute_m_r(r, d), 1.0 / p) * f_norm;
        break;
    }
    if (row.rhs > 0.0) {
      row.ratio = row.lhs / row.rhs;
      report.max_ratio = std::max(report.max_ratio.value_or(*row.ratio), *row.ratio);
    }
    report.rows.push_back(row);
  }
  std::sort(report.rows.begin(), report.rows.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  return report;
}

}  // namespace bsk
