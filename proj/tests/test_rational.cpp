// Exact rational ground truth for polynomial f and rational x.

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "bsk/bsk_operator.hpp"
#include "bsk/expression.hpp"
#include "doctest.h"

namespace {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

Integer choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  Integer c = 1;
  for (int j = 1; j <= k; ++j) c = c * (n - k + j) / j;
  return c;
}

Rational power(const Rational& base, int e) {
  Rational v = 1;
  for (int i = 0; i < e; ++i) v *= base;
  return v;
}

Rational bernstein(int n, int k, const Rational& x) {
  if (k < 0 || k > n) return 0;
  return Rational(choose(n, k)) * power(x, k) * power(1 - x, n - k);
}

Rational stancu(int n, int r, int k, const Rational& x) {
  const int m = n - r;
  Rational w = 0;
  if (k <= m) w += (1 - x) * bernstein(m, k, x);
  if (k >= r) w += x * bernstein(m, k - r, x);
  return w;
}

// Mean of t^a over [k/(n+1), (k+1)/(n+1)].
Rational monomial_mean(int a, int k, int n) {
  const Rational h(1, n + 1);
  return (power(Rational(k + 1) * h, a + 1) - power(Rational(k) * h, a + 1)) / ((a + 1) * h);
}

// K^d_{n,r}(x_1^{e_1} ... x_d^{e_d}; x) exactly.
Rational exact_operator(int n, int r, const std::vector<int>& exponents, const std::vector<Rational>& x) {
  Rational total = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational axis_sum = 0;
    for (int k = 0; k <= n; ++k) axis_sum += stancu(n, r, k, x[i]) * monomial_mean(exponents[i], k, n);
    total *= axis_sum;
  }
  return total;
}

std::string monomial_text(const std::vector<int>& exponents) {
  std::string text = "1";
  for (std::size_t i = 0; i < exponents.size(); ++i)
    if (exponents[i] > 0) text += "*x" + std::to_string(i + 1) + "^" + std::to_string(exponents[i]);
  return text;
}

}  // namespace

TEST_SUITE("rational") {
  TEST_CASE("polynomial images match exact rational arithmetic") {
    const std::vector<Rational> samples{Rational(0), Rational(1, 3), Rational(2, 7), Rational(1, 2), Rational(9, 10),
                                        Rational(1)};
    for (int d : {1, 2})
      for (int n = 1; n <= 12; ++n)
        for (int r = 0; 2 * r < n; ++r)
          for (const auto& exponents : std::vector<std::vector<int>>{{0, 0}, {1, 0}, {2, 0}, {0, 2}, {1, 1}, {3, 2}}) {
            std::vector<int> e(exponents.begin(), exponents.begin() + d);
            if (d == 1 && exponents[1] != 0) continue;
            const auto f = bsk::expr::parse_function(monomial_text(e), d);
            const bsk::BskOperator op(bsk::OperatorParams(n, r, d), f);
            for (const auto& a : samples)
              for (const auto& b : samples) {
                std::vector<Rational> x{a};
                if (d == 2) x.push_back(b);
                std::vector<double> xd;
                for (const auto& v : x) xd.push_back(static_cast<double>(v));
                const double exact = static_cast<double>(exact_operator(n, r, e, x));
                REQUIRE(std::abs(op(xd) - exact) <= 1e-14);
                if (d == 1) break;
              }
          }
  }
}
