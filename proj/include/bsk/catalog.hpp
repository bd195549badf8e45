#pragma once

#include <string>
#include <vector>

#include "bsk/field.hpp"

// Built-in test functions on Q_d. Axes are 0-based here; labels use x1..xd.
namespace bsk::catalog {

ScalarField constant(int d, double value = 1.0);
/// pr_i(x) = x_i.
ScalarField coordinate(int d, int axis = 0);
/// pr_i^2.
ScalarField coordinate_squared(int d, int axis = 0);
/// x_1 x_2 ... x_d.
ScalarField product(int d);
/// x_1 + ... + x_d.
ScalarField coordinate_sum(int d);
/// exp(x_1 + ... + x_d).
ScalarField exponential(int d);
/// sin(pi x_1) ... sin(pi x_d); interior maximum at 1/2 on every axis.
ScalarField bump(int d);
/// |x_axis - at|.
ScalarField kink(int d, double at = 0.5, int axis = 0);
/// 1 for x_axis >= at, else 0.
ScalarField step(int d, double at = 0.5, int axis = 0);

/// One instance of every entry above, in a fixed order.
std::vector<ScalarField> standard(int d);

/// Looks up `one`, `x<i>`, `x<i>^2`, `prod`, `sum`, `exp`, `bump`,
/// `kink[:at]`, `step[:at]`. Throws DomainError for unknown names.
ScalarField by_name(const std::string& name, int d);

std::vector<std::string> names();

}  // namespace bsk::catalog
