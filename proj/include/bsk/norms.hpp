#pragma once

#include <vector>

#include "bsk/field.hpp"
#include "bsk/quadrature.hpp"

namespace bsk {

/// Throws DomainError unless 1 <= p < infinity.
void check_exponent(double p);

/// Per-axis composite rules over [0,1]: `cells` equal pieces refined at the
/// jumps and kinks of f.
std::vector<AxisRule> field_axis_rules(const ScalarField& f, int cells, const QuadratureRule& rule);

/// Composite-quadrature L^p(Q_d) norm of f.
double lp_norm(const ScalarField& f, double p, int cells, const QuadratureRule& rule);

/// sum_j w_j |v_j|^p, then the p-th root.
double finish_lp(double sum_of_powers, double p);

}  // namespace bsk
