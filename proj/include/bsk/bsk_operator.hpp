#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <vector>

#include "bsk/field.hpp"
#include "bsk/params.hpp"
#include "bsk/quadrature.hpp"

namespace bsk {

inline constexpr std::size_t kDefaultTermBudget = 10'000'000;

/// k = (k_1, ..., k_d) with every component in [0, n].
class MultiIndexK {
 public:
  MultiIndexK(std::vector<int> components, int n);

  int dimension() const noexcept { return static_cast<int>(components_.size()); }
  int operator[](int axis) const { return components_[axis]; }
  std::span<const int> components() const noexcept { return components_; }

 private:
  std::vector<int> components_;
};

/// Q_{n,k} = prod_i [k_i/(n+1), (k_i+1)/(n+1)].
struct Cell {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  static Cell of(const OperatorParams& params, const MultiIndexK& k);
  int dimension() const noexcept { return static_cast<int>(lower.size()); }
};

/// prod_i w_{n,k_i,r}(x_i). Requires n > 2r.
double tensor_weight(const OperatorParams& params, const MultiIndexK& k, std::span<const double> x);

/// Mean of f over the cell by tensor Gauss-Legendre, split at the jumps and
/// kinks f declares inside the cell.
double cell_mean(const ScalarField& f, const Cell& cell, const QuadratureRule& rule);

/// prod_i of the exact integrals of w_{n,k_i,r} over [0,1]. Requires n > 2r.
double weight_hypercube_integral(const OperatorParams& params, const MultiIndexK& k);

// Closed-form moments of K^d_{n,r}; axis is 0-based. All require n > 2r.

/// K(pr_i; x) = n/(n+1) x_i + 1/(2(n+1)).
double moment_first(const OperatorParams& params, int axis, std::span<const double> x);
/// K(pr_i^2; x).
double moment_second(const OperatorParams& params, int axis, std::span<const double> x);
/// K((pr_i - x_i)^2; x) = (n-1+r(r-1))/(n+1)^2 x_i(1-x_i) + 1/(3(n+1)^2).
double central_second_moment(const OperatorParams& params, int axis, std::span<const double> x);

/// Multivariate Brass-Stancu-Kantorovich operator K^d_{n,r} bound to one f.
///
/// The (n+1)^d cell means are computed once on construction; evaluation at a
/// point is then a compensated direct sum over all multi-indices, and
/// evaluation on tensor grids contracts one axis at a time.
///
/// d = 1 accepts every n >= r; d >= 2 requires n > 2r.
class BskOperator {
 public:
  BskOperator(OperatorParams params, ScalarField f, QuadratureRule rule = QuadratureRule::gauss_legendre(),
              std::size_t term_budget = kDefaultTermBudget);

  const OperatorParams& params() const noexcept { return params_; }
  const ScalarField& field() const noexcept { return field_; }
  const QuadratureRule& rule() const noexcept { return rule_; }
  /// Flattened with k_1 varying fastest.
  const Eigen::VectorXd& cell_means() const noexcept { return cell_means_; }

  double operator()(std::span<const double> x) const;
  double operator()(std::initializer_list<double> x) const {
    return (*this)(std::span<const double>(x.begin(), x.size()));
  }

  /// Values on the tensor grid axis_points[0] x ... x axis_points[d-1], first
  /// axis fastest.
  Eigen::VectorXd evaluate_on_grid(std::span<const std::vector<double>> axis_points) const;

  /// ||K f||_p over Q_d.
  double norm_lp(double p) const;
  /// ||K f - f||_p over Q_d. Composite rule on the (n+1)-cell partition plus
  /// the singularities of f; for d = 1 pieces are also split at sign changes
  /// of the error.
  double error_lp(double p) const;
  /// max |K f - f| over a uniform grid with `points_per_axis` points per axis.
  double error_sup(int points_per_axis) const;

 private:
  std::vector<AxisRule> norm_axes() const;
  double error_lp_univariate(double p) const;

  OperatorParams params_;
  ScalarField field_;
  QuadratureRule rule_;
  Eigen::VectorXd cell_means_;
};

/// K^d_{n,r}(f; x).
double bsk_apply(const OperatorParams& params, const ScalarField& f, std::span<const double> x,
                 const QuadratureRule& rule = QuadratureRule::gauss_legendre(),
                 std::size_t term_budget = kDefaultTermBudget);

/// Univariate K_{n,r}(f; x) through the two-integral form
///   sum_{k=0}^{n-r} p_{n-r,k}(x) (n+1) [(1-x) int_{I_k} f + x int_{I_{k+r}} f].
double bsk_apply_explicit(const OperatorParams& params, const ScalarField& f, double x,
                          const QuadratureRule& rule = QuadratureRule::gauss_legendre());

/// Classical Kantorovich operator K_n(f; x) with Bernstein weights.
double kantorovich_apply(int n, const ScalarField& f, double x,
                         const QuadratureRule& rule = QuadratureRule::gauss_legendre());

/// L_{n,r}(f; x) for a univariate field.
double bsb_apply(const OperatorParams& params, const ScalarField& f, double x);

}  // namespace bsk
