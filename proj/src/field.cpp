#include "bsk/field.hpp"

#include <algorithm>
#include <bit>

#include "bsk/errors.hpp"

namespace bsk {

MultiIndexAlpha::MultiIndexAlpha(int dimension, std::uint32_t mask) : dimension_(dimension), mask_(mask) {
  if (dimension < 1 || dimension > 31) throw DomainError("multi-index dimension must lie in [1,31]");
  if (mask >> dimension) throw DomainError("multi-index has components beyond its dimension");
}

MultiIndexAlpha MultiIndexAlpha::from_components(std::span<const int> components) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i] != 0 && components[i] != 1)
      throw DomainError("multi-index components must be 0 or 1");
    if (components[i] == 1) mask |= 1u << i;
  }
  return MultiIndexAlpha(static_cast<int>(components.size()), mask);
}

MultiIndexAlpha MultiIndexAlpha::unit(int dimension, int axis) {
  if (axis < 0 || axis >= dimension) throw DomainError("axis out of range");
  return MultiIndexAlpha(dimension, 1u << axis);
}

std::vector<MultiIndexAlpha> MultiIndexAlpha::all_nonzero(int dimension) {
  std::vector<MultiIndexAlpha> result;
  for (std::uint32_t mask = 1; mask < (1u << dimension); ++mask) result.emplace_back(dimension, mask);
  return result;
}

int MultiIndexAlpha::order() const noexcept { return std::popcount(mask_); }

std::string MultiIndexAlpha::to_string() const {
  std::string s = "(";
  for (int i = 0; i < dimension_; ++i) {
    if (i) s += ",";
    s += touches(i) ? "1" : "0";
  }
  return s + ")";
}

void check_in_cube(std::span<const double> x, int d) {
  if (static_cast<int>(x.size()) != d)
    throw DomainError("point has " + std::to_string(x.size()) + " coordinates, expected " +
                      std::to_string(d));
  for (double xi : x)
    if (!(xi >= 0.0 && xi <= 1.0)) throw DomainError("point lies outside the unit cube");
}

ScalarField::ScalarField(int arity, Function function, std::string label)
    : arity_(arity), function_(std::make_shared<const Function>(std::move(function))), label_(std::move(label)) {
  if (arity < 1 || arity > 31) throw DomainError("field arity must lie in [1,31]");
}

double ScalarField::operator()(std::span<const double> x) const {
  check_in_cube(x, arity_);
  return (*function_)(x);
}

ScalarField& ScalarField::add_singularity(Singularity s) {
  if (s.axis < 0 || s.axis >= arity_) throw DomainError("singularity axis out of range");
  if (!(s.at >= 0.0 && s.at <= 1.0)) throw DomainError("singularity must lie inside the unit cube");
  if (std::find(singularities_.begin(), singularities_.end(), s) == singularities_.end())
    singularities_.push_back(s);
  return *this;
}

std::vector<double> ScalarField::breakpoints(int axis, bool include_extrema) const {
  std::vector<double> points;
  for (const auto& s : singularities_)
    if (s.axis == axis && (include_extrema || s.kind != SingularityKind::extremum)) points.push_back(s.at);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

ScalarField& ScalarField::mark_nonsmooth(int axis) {
  if (axis < 0 || axis >= arity_) throw DomainError("axis out of range");
  nonsmooth_mask_ |= 1u << axis;
  return *this;
}

bool ScalarField::smooth_along(int axis) const noexcept {
  if ((nonsmooth_mask_ >> axis) & 1u) return false;
  for (const auto& s : singularities_)
    if (s.axis == axis && s.kind != SingularityKind::extremum) return false;
  return true;
}

ScalarField& ScalarField::set_partial(const MultiIndexAlpha& alpha, Function partial) {
  if (alpha.dimension() != arity_) throw DomainError("multi-index dimension does not match field arity");
  if (alpha.mask() == 0) throw DomainError("partial requires |alpha| >= 1");
  partials_[alpha.mask()] = std::make_shared<const Function>(std::move(partial));
  return *this;
}

bool ScalarField::has_exact_partial(const MultiIndexAlpha& alpha) const {
  return alpha.dimension() == arity_ && partials_.count(alpha.mask()) > 0;
}

std::optional<ScalarField> ScalarField::exact_partial(const MultiIndexAlpha& alpha) const {
  if (!has_exact_partial(alpha)) return std::nullopt;
  ScalarField result(arity_, Function{}, "D" + alpha.to_string() + " " + label_);
  result.function_ = partials_.at(alpha.mask());
  for (const auto& [mask, fn] : partials_) {
    if ((mask & alpha.mask()) == alpha.mask() && mask != alpha.mask())
      result.partials_[mask & ~alpha.mask()] = fn;
  }
  // Singular behaviour along untouched axes survives differentiation.
  for (const auto& s : singularities_)
    if (!alpha.touches(s.axis) && s.kind != SingularityKind::extremum) result.singularities_.push_back(s);
  result.nonsmooth_mask_ = nonsmooth_mask_ & ~alpha.mask();
  return result;
}

}  // namespace bsk
