#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bsk {

enum class SingularityKind {
  jump,      // discontinuity of f across the hyperplane x_axis = at
  kink,      // f continuous, first partial along axis jumps
  extremum,  // smooth local extremum; only used to place sample points
};

/// Axis-aligned hyperplane x_axis = at where f is non-smooth or extremal.
struct Singularity {
  int axis = 0;
  double at = 0.0;
  SingularityKind kind = SingularityKind::kink;

  friend bool operator==(const Singularity&, const Singularity&) = default;
};

/// Multi-index with every component 0 or 1, stored as a bit mask.
class MultiIndexAlpha {
 public:
  MultiIndexAlpha(int dimension, std::uint32_t mask);

  static MultiIndexAlpha from_components(std::span<const int> components);
  static MultiIndexAlpha unit(int dimension, int axis);
  /// Every alpha in {0,1}^d except zero, ordered by mask.
  static std::vector<MultiIndexAlpha> all_nonzero(int dimension);

  int dimension() const noexcept { return dimension_; }
  std::uint32_t mask() const noexcept { return mask_; }
  int order() const noexcept;
  bool touches(int axis) const noexcept { return (mask_ >> axis) & 1u; }
  int component(int axis) const noexcept { return touches(axis) ? 1 : 0; }
  std::string to_string() const;

  friend bool operator==(const MultiIndexAlpha&, const MultiIndexAlpha&) = default;

 private:
  int dimension_;
  std::uint32_t mask_;
};

/// Real-valued function on the unit cube Q_d = [0,1]^d.
///
/// Besides the evaluator a field may carry exact mixed partials D^alpha for
/// alpha in {0,1}^d and a list of axis-aligned singularities; quadrature and
/// sup-grids split or sample at those locations.
class ScalarField {
 public:
  using Function = std::function<double(std::span<const double>)>;

  ScalarField(int arity, Function function, std::string label = {});

  int arity() const noexcept { return arity_; }
  const std::string& label() const noexcept { return label_; }

  /// Evaluates f at x; throws DomainError if x is not a point of Q_d.
  double operator()(std::span<const double> x) const;
  double operator()(std::initializer_list<double> x) const {
    return (*this)(std::span<const double>(x.begin(), x.size()));
  }
  /// Evaluates without the Q_d membership check.
  double evaluate_unchecked(std::span<const double> x) const { return (*function_)(x); }

  ScalarField& add_singularity(Singularity s);
  const std::vector<Singularity>& singularities() const noexcept { return singularities_; }
  /// Sorted coordinates of singularities on `axis` (jumps and kinks only
  /// unless include_extrema).
  std::vector<double> breakpoints(int axis, bool include_extrema = false) const;

  /// Declares f non-differentiable along `axis` even without a located singularity.
  ScalarField& mark_nonsmooth(int axis);
  bool smooth_along(int axis) const noexcept;

  ScalarField& set_partial(const MultiIndexAlpha& alpha, Function partial);
  bool has_exact_partial(const MultiIndexAlpha& alpha) const;
  /// D^alpha f when stored exactly. The result keeps the partials of f that
  /// differentiate along disjoint axes, so nested requests stay exact.
  std::optional<ScalarField> exact_partial(const MultiIndexAlpha& alpha) const;

 private:
  int arity_;
  std::shared_ptr<const Function> function_;
  std::string label_;
  std::vector<Singularity> singularities_;
  std::uint32_t nonsmooth_mask_ = 0;
  std::map<std::uint32_t, std::shared_ptr<const Function>> partials_;
};

/// Throws DomainError unless x has d coordinates in [0,1].
void check_in_cube(std::span<const double> x, int d);

}  // namespace bsk
