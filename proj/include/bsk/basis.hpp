#pragma once

#include <Eigen/Core>

#include <string>
#include <utility>

#include "bsk/errors.hpp"
#include "bsk/params.hpp"

// Bernstein and Brass-Stancu fundamental functions on [0,1].
//
// Everything here is templated on the scalar type so the same code runs in
// double, long double or any exact field type that supports + - * / and
// ordering against integer-constructed values.

namespace bsk {

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

template <class Scalar>
void check_unit_interval(const Scalar& x) {
  if (!(x >= Scalar(0) && x <= Scalar(1)))
    throw DomainError("basis argument must lie in [0,1]");
}

template <class Scalar>
Scalar integer_power(Scalar base, int exponent) {
  Scalar result(1);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

}  // namespace detail

/// p_{n,k}(x) = C(n,k) x^k (1-x)^{n-k}, zero for k outside [0,n].
///
/// Walks the ratio recurrence p_{n,k+1} = p_{n,k} (n-k)/(k+1) x/(1-x) from the
/// end of the row closer to x, so no binomial coefficient is ever formed and
/// the starting value is at least 2^{-n}.
template <class Scalar>
Scalar bernstein_basis(int n, int k, const Scalar& x) {
  if (n < 0) throw DomainError("bernstein_basis requires n >= 0");
  detail::check_unit_interval(x);
  if (k < 0 || k > n) return Scalar(0);
  if (x == Scalar(0)) return Scalar(k == 0 ? 1 : 0);
  if (x == Scalar(1)) return Scalar(k == n ? 1 : 0);

  const Scalar one_minus = Scalar(1) - x;
  if (x + x <= Scalar(1)) {
    Scalar value = detail::integer_power(one_minus, n);
    const Scalar ratio = x / one_minus;
    for (int j = 0; j < k; ++j) value = value * Scalar(n - j) / Scalar(j + 1) * ratio;
    return value;
  }
  Scalar value = detail::integer_power(x, n);
  const Scalar ratio = one_minus / x;
  for (int j = n; j > k; --j) value = value * Scalar(j) / Scalar(n - j + 1) * ratio;
  return value;
}

/// All of p_{n,0}(x), ..., p_{n,n}(x).
template <class Scalar>
Vector<Scalar> bernstein_row(int n, const Scalar& x) {
  if (n < 0) throw DomainError("bernstein_row requires n >= 0");
  detail::check_unit_interval(x);
  Vector<Scalar> row = Vector<Scalar>::Constant(n + 1, Scalar(0));
  if (x == Scalar(0)) {
    row(0) = Scalar(1);
    return row;
  }
  if (x == Scalar(1)) {
    row(n) = Scalar(1);
    return row;
  }
  const Scalar one_minus = Scalar(1) - x;
  if (x + x <= Scalar(1)) {
    const Scalar ratio = x / one_minus;
    row(0) = detail::integer_power(one_minus, n);
    for (int k = 0; k < n; ++k) row(k + 1) = row(k) * Scalar(n - k) / Scalar(k + 1) * ratio;
  } else {
    const Scalar ratio = one_minus / x;
    row(n) = detail::integer_power(x, n);
    for (int k = n; k > 0; --k) row(k - 1) = row(k) * Scalar(k) / Scalar(n - k + 1) * ratio;
  }
  return row;
}

/// Stancu fundamental function w_{n,k,r}(x) = (1-x) p_{n-r,k}(x) + x p_{n-r,k-r}(x).
///
/// With p vanishing outside its index range this is the usual three-branch
/// definition whenever n > 2r; for r <= n <= 2r it is the weight that makes
/// the single-sum and two-sum forms of L_{n,r} agree.
template <class Scalar>
Scalar stancu_basis(const OperatorParams& params, int k, const Scalar& x) {
  if (k < 0 || k > params.n) throw DomainError("stancu_basis index k must lie in [0,n]");
  detail::check_unit_interval(x);
  const int m = params.n - params.r;
  return (Scalar(1) - x) * bernstein_basis(m, k, x) + x * bernstein_basis(m, k - params.r, x);
}

/// All of w_{n,0,r}(x), ..., w_{n,n,r}(x).
template <class Scalar>
Vector<Scalar> stancu_row(const OperatorParams& params, const Scalar& x) {
  const int n = params.n;
  const int r = params.r;
  const Vector<Scalar> p = bernstein_row(n - r, x);
  const Scalar one_minus = Scalar(1) - x;
  Vector<Scalar> w = Vector<Scalar>::Constant(n + 1, Scalar(0));
  for (int k = 0; k <= n - r; ++k) {
    w(k) += one_minus * p(k);
    w(k + r) += x * p(k);
  }
  return w;
}

/// Exact value of the integral of w_{n,k,r} over [0,1].
///
/// Each of the two Beta integrals contributes (n-r-k+1) resp. (k-r+1) over
/// (n-r+2)(n-r+1) when its index is in range; in the strict regime this is the
/// familiar three-branch formula.
template <class Scalar>
Scalar stancu_basis_integral(const OperatorParams& params, int k) {
  const int n = params.n;
  const int r = params.r;
  if (k < 0 || k > n) throw DomainError("stancu_basis_integral index k must lie in [0,n]");
  long long numerator = 0;
  if (k <= n - r) numerator += n - r - k + 1;
  if (k >= r) numerator += k - r + 1;
  const long long denominator = static_cast<long long>(n - r + 2) * (n - r + 1);
  return Scalar(numerator) / Scalar(denominator);
}

/// Brass-Stancu-Bernstein operator L_{n,r}(f; x) in its two-sum form
///   sum_{k=0}^{n-r} p_{n-r,k}(x) [(1-x) f(k/n) + x f((k+r)/n)],
/// valid for every n >= r. f is any callable Scalar -> Scalar.
template <class Scalar, class Function>
Scalar bsb_apply(const OperatorParams& params, Function&& f, const Scalar& x) {
  if (params.d != 1) throw DomainError("bsb_apply is univariate");
  detail::check_unit_interval(x);
  const int n = params.n;
  const int r = params.r;
  if (n == 0) return f(Scalar(0));
  const Vector<Scalar> p = bernstein_row(n - r, x);
  const Scalar one_minus = Scalar(1) - x;
  Scalar total(0);
  for (int k = 0; k <= n - r; ++k) {
    if (p(k) == Scalar(0)) continue;
    const Scalar left = f(Scalar(k) / Scalar(n));
    const Scalar right = f(Scalar(k + r) / Scalar(n));
    total += p(k) * (one_minus * left + x * right);
  }
  return total;
}

}  // namespace bsk
