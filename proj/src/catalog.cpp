#include "bsk/catalog.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "bsk/errors.hpp"

namespace bsk::catalog {
namespace {

using Fn1 = std::function<double(double)>;

// One factor g_i of a tensor-product function prod_i g_i(x_i).
struct Factor {
  Fn1 value;
  std::optional<Fn1> derivative;
};

Factor identity_factor() {
  return {[](double) { return 1.0; }, Fn1([](double) { return 0.0; })};
}

// Builds prod_i factors[i](x_i) with every exact D^alpha available when all
// touched factors are differentiable.
ScalarField separable(std::vector<Factor> factors, std::string label) {
  const int d = static_cast<int>(factors.size());
  auto shared = std::make_shared<const std::vector<Factor>>(std::move(factors));
  ScalarField field(
      d,
      [shared](std::span<const double> x) {
        double v = 1.0;
        for (std::size_t i = 0; i < x.size(); ++i) v *= (*shared)[i].value(x[i]);
        return v;
      },
      std::move(label));
  for (const auto& alpha : MultiIndexAlpha::all_nonzero(d)) {
    bool available = true;
    for (int i = 0; i < d; ++i)
      if (alpha.touches(i) && !(*shared)[i].derivative) available = false;
    if (!available) continue;
    const std::uint32_t mask = alpha.mask();
    field.set_partial(alpha, [shared, mask](std::span<const double> x) {
      double v = 1.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const Factor& f = (*shared)[i];
        v *= ((mask >> i) & 1u) ? (*f.derivative)(x[i]) : f.value(x[i]);
      }
      return v;
    });
  }
  return field;
}

void check_axis(int d, int axis) {
  if (d < 1) throw DomainError("dimension must be at least 1");
  if (axis < 0 || axis >= d) throw DomainError("catalog axis out of range");
}

std::string var(int axis) { return "x" + std::to_string(axis + 1); }

}  // namespace

ScalarField constant(int d, double value) {
  check_axis(d, 0);
  ScalarField field(d, [value](std::span<const double>) { return value; }, value == 1.0 ? "one" : "const");
  for (const auto& alpha : MultiIndexAlpha::all_nonzero(d))
    field.set_partial(alpha, [](std::span<const double>) { return 0.0; });
  return field;
}

ScalarField coordinate(int d, int axis) {
  check_axis(d, axis);
  std::vector<Factor> factors(d, identity_factor());
  factors[axis] = {[](double t) { return t; }, Fn1([](double) { return 1.0; })};
  return separable(std::move(factors), var(axis));
}

ScalarField coordinate_squared(int d, int axis) {
  check_axis(d, axis);
  std::vector<Factor> factors(d, identity_factor());
  factors[axis] = {[](double t) { return t * t; }, Fn1([](double t) { return 2.0 * t; })};
  return separable(std::move(factors), var(axis) + "^2");
}

ScalarField product(int d) {
  check_axis(d, 0);
  std::vector<Factor> factors(d, Factor{[](double t) { return t; }, Fn1([](double) { return 1.0; })});
  return separable(std::move(factors), "prod");
}

ScalarField coordinate_sum(int d) {
  check_axis(d, 0);
  ScalarField field(
      d,
      [](std::span<const double> x) {
        double s = 0.0;
        for (double xi : x) s += xi;
        return s;
      },
      "sum");
  for (const auto& alpha : MultiIndexAlpha::all_nonzero(d)) {
    const double value = alpha.order() == 1 ? 1.0 : 0.0;
    field.set_partial(alpha, [value](std::span<const double>) { return value; });
  }
  return field;
}

ScalarField exponential(int d) {
  check_axis(d, 0);
  std::vector<Factor> factors(d, Factor{[](double t) { return std::exp(t); }, Fn1([](double t) { return std::exp(t); })});
  return separable(std::move(factors), "exp");
}

ScalarField bump(int d) {
  check_axis(d, 0);
  constexpr double pi = std::numbers::pi;
  std::vector<Factor> factors(
      d, Factor{[](double t) { return std::sin(pi * t); }, Fn1([](double t) { return pi * std::cos(pi * t); })});
  ScalarField field = separable(std::move(factors), "bump");
  for (int i = 0; i < d; ++i) field.add_singularity({i, 0.5, SingularityKind::extremum});
  return field;
}

ScalarField kink(int d, double at, int axis) {
  check_axis(d, axis);
  if (!(at >= 0.0 && at <= 1.0)) throw DomainError("kink location must lie in [0,1]");
  std::vector<Factor> factors(d, identity_factor());
  factors[axis] = {[at](double t) { return std::abs(t - at); }, std::nullopt};
  ScalarField field = separable(std::move(factors), "kink");
  field.add_singularity({axis, at, SingularityKind::kink});
  return field;
}

ScalarField step(int d, double at, int axis) {
  check_axis(d, axis);
  if (!(at >= 0.0 && at <= 1.0)) throw DomainError("step location must lie in [0,1]");
  std::vector<Factor> factors(d, identity_factor());
  factors[axis] = {[at](double t) { return t >= at ? 1.0 : 0.0; }, std::nullopt};
  ScalarField field = separable(std::move(factors), "step");
  field.add_singularity({axis, at, SingularityKind::jump});
  return field;
}

std::vector<ScalarField> standard(int d) {
  return {constant(d),    coordinate(d),  coordinate_squared(d), product(d), coordinate_sum(d),
          exponential(d), bump(d),        kink(d),               step(d)};
}

std::vector<std::string> names() {
  return {"one", "x<i>", "x<i>^2", "prod", "sum", "exp", "bump", "kink[:at]", "step[:at]"};
}

ScalarField by_name(const std::string& name, int d) {
  const auto colon = name.find(':');
  const std::string base = name.substr(0, colon);
  std::optional<double> argument;
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      argument = std::stod(name.substr(colon + 1), &used);
      if (used != name.size() - colon - 1) throw DomainError("bad catalog argument in '" + name + "'");
    } catch (const std::logic_error&) {
      throw DomainError("bad catalog argument in '" + name + "'");
    }
  }
  if (base == "one") return constant(d);
  if (base == "prod") return product(d);
  if (base == "sum") return coordinate_sum(d);
  if (base == "exp") return exponential(d);
  if (base == "bump") return bump(d);
  if (base == "kink") return kink(d, argument.value_or(0.5));
  if (base == "step") return step(d, argument.value_or(0.5));
  if (base.size() >= 2 && base[0] == 'x') {
    const bool squared = base.size() > 2 && base.ends_with("^2");
    const std::string digits = base.substr(1, base.size() - 1 - (squared ? 2 : 0));
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
      const int axis = std::stoi(digits) - 1;
      if (axis < 0 || axis >= d) throw ArityError("catalog function '" + name + "' needs more dimensions");
      return squared ? coordinate_squared(d, axis) : coordinate(d, axis);
    }
  }
  throw DomainError("unknown catalog function '" + name + "'");
}

}  // namespace bsk::catalog
