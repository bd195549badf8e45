#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bsk/bsk_operator.hpp"
#include "bsk/field.hpp"
#include "bsk/moduli.hpp"
#include "bsk/params.hpp"
#include "bsk/quadrature.hpp"

namespace bsk {

/// A_{n,r} = (3n + 1 + 3r(r-1)) / (12 (n+1)^2), the bound on the central
/// second moments. Requires n > 2r.
double compute_a_nr(const OperatorParams& params);

/// M_r = ((2r+2)/(r+3))^d for r > 1, 1 for r in {0,1}: bound on
/// ||K^d_{n,r}||^p over all n > 2r.
double compute_m_r(int r, int d);

/// B_r = (3r^2 + 3r + 4) / (24(r+1)) for r > 1, 1/4 for r in {0,1}.
double compute_b_r(int r);

struct BoundQuantities {
  double a_nr = 0.0;
  double m_r = 0.0;
  double b_r = 0.0;
  OperatorParams params;

  static BoundQuantities of(const OperatorParams& params);
};

enum class TheoremId { tau_estimate, smooth_estimate, omega_estimate, lp_norm_bound };

std::string to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& name);

struct BoundRatioRow {
  int n = 0;
  double lhs = 0.0;
  double rhs = 0.0;              // right-hand side without its unknown constant
  std::optional<double> ratio;   // empty when rhs == 0
};

struct BoundRatioReport {
  TheoremId theorem = TheoremId::tau_estimate;
  double p = 1.0;
  int r = 0;
  int d = 1;
  std::string function;
  std::vector<BoundRatioRow> rows;
  std::optional<double> max_ratio;
};

struct VerifyOptions {
  QuadratureRule rule = QuadratureRule::gauss_legendre();
  std::optional<ModulusGrid> grid;  // defaults to ModulusGrid::for_dimension(d)
  std::size_t term_budget = kDefaultTermBudget;
};

/// Geometric n-sweep: {8..256} for d=1, {8,16,32} for d=2, {8,16} otherwise.
std::vector<int> default_sweep(int d);

/// Per-n bound-ratio report for one of the error estimates:
///   tau_estimate    ||K f - f||_p  vs  tau_1(f, A_{n,r}^{1/(2d)})_p
///   smooth_estimate ||K f - f||_p  vs  sum_{|a|>=1} (n+1)^{-|a|/(2d)} ||D^a f||_p
///   omega_estimate  ||K f - f||_p  vs  omega_1(f, (n+1)^{-1/(2d)})_p
///   lp_norm_bound   ||K f||_p      vs  M_r^{1/p} ||f||_p
BoundRatioReport verify_theorem(TheoremId theorem, const ScalarField& f, int r, std::span<const int> n_list,
                                double p, const VerifyOptions& options = {});

}  // namespace bsk
