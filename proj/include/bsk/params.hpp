#pragma once

#include <cstddef>
#include <string>

#include "bsk/errors.hpp"

namespace bsk {

/// Degree n, shift r and dimension d of a Brass-Stancu(-Kantorovich) operator.
///
/// Construction only enforces n >= r (the two-sum representation of the
/// discrete operator is defined there). Results that rely on the Stancu
/// weights being the three-branch functions on a non-overlapping index split
/// additionally demand strict_regime(), i.e. n > 2r; use require_strict().
struct OperatorParams {
  int n = 1;
  int r = 0;
  int d = 1;

  OperatorParams() = default;
  OperatorParams(int n_, int r_, int d_ = 1) : n(n_), r(r_), d(d_) {
    if (n < 0 || r < 0) throw DomainError("operator parameters must be non-negative");
    if (d < 1) throw DomainError("dimension must be at least 1");
    if (n < r) throw RegimeError("operator requires n >= r (n=" + std::to_string(n) +
                                 ", r=" + std::to_string(r) + ")");
  }

  bool strict_regime() const noexcept { return n > 2 * r; }

  void require_strict() const {
    if (!strict_regime())
      throw RegimeError("operation requires n > 2r (n=" + std::to_string(n) +
                        ", r=" + std::to_string(r) + ")");
  }

  /// Number of summands (n+1)^d, saturating at SIZE_MAX.
  std::size_t term_count() const noexcept {
    std::size_t total = 1;
    const auto base = static_cast<std::size_t>(n) + 1;
    for (int i = 0; i < d; ++i) {
      if (total > static_cast<std::size_t>(-1) / base) return static_cast<std::size_t>(-1);
      total *= base;
    }
    return total;
  }

  friend bool operator==(const OperatorParams&, const OperatorParams&) = default;
};

}  // namespace bsk
