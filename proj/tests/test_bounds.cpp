#include <algorithm>
#include <cmath>
#include <vector>

#include "bsk/bounds.hpp"
#include "bsk/catalog.hpp"
#include "bsk/errors.hpp"
#include "doctest.h"

using bsk::OperatorParams;
namespace catalog = bsk::catalog;

TEST_SUITE("bounds") {
  TEST_CASE("closed-form quantities") {
    CHECK(bsk::compute_a_nr(OperatorParams(5, 2)) == doctest::Approx(22.0 / 432.0).epsilon(1e-15));
    CHECK(bsk::compute_a_nr(OperatorParams(9, 1)) == doctest::Approx(28.0 / 1200.0).epsilon(1e-15));
    CHECK_THROWS_AS(bsk::compute_a_nr(OperatorParams(4, 2)), bsk::RegimeError);
    CHECK(bsk::compute_m_r(0, 3) == 1.0);
    CHECK(bsk::compute_m_r(1, 2) == 1.0);
    CHECK(bsk::compute_m_r(2, 1) == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(bsk::compute_m_r(2, 2) == doctest::Approx(1.44).epsilon(1e-15));
    CHECK(bsk::compute_b_r(0) == 0.25);
    CHECK(bsk::compute_b_r(1) == 0.25);
    CHECK(bsk::compute_b_r(2) == doctest::Approx(11.0 / 36.0).epsilon(1e-15));
    CHECK(10.0 / 48.0 <= 0.25);
    const auto q = bsk::BoundQuantities::of(OperatorParams(5, 2, 2));
    CHECK(q.m_r == doctest::Approx(1.44));
    CHECK(q.b_r == doctest::Approx(11.0 / 36.0));
  }

  TEST_CASE("m_r is the supremum of ((n+1)/(n-r+2))^d") {
    for (int r = 0; r <= 8; ++r)
      for (int d : {1, 2, 3}) {
        double sup = 0.0;
        for (int n = 2 * r + 1; n <= 10000; ++n) sup = std::max(sup, std::pow((n + 1.0) / (n - r + 2.0), d));
        if (r <= 1)
          CHECK(sup <= 1.0 + 1e-15);
        else
          CHECK(bsk::compute_m_r(r, d) == doctest::Approx(sup).epsilon(1e-14));
        CHECK(bsk::compute_m_r(r, d) >= sup - 1e-15);
      }
  }

  TEST_CASE("bound chain") {
    for (int r = 0; r <= 50; ++r)
      for (int n = 2 * r + 1; n <= 10000; ++n) {
        const OperatorParams params(n, r);
        const double a = bsk::compute_a_nr(params);
        REQUIRE(a <= 1.0);
        // equality at n = 2r + 1
        REQUIRE(a <= bsk::compute_b_r(r) / (n + 1.0) * (1.0 + 1e-14));
        if (r <= 1) REQUIRE((3.0 * n + 1.0) / (12.0 * (n + 1.0) * (n + 1.0)) < 1.0 / (4.0 * (n + 1.0)));
      }
  }

  TEST_CASE("theorem names") {
    for (auto id : {bsk::TheoremId::tau_estimate, bsk::TheoremId::smooth_estimate, bsk::TheoremId::omega_estimate,
                    bsk::TheoremId::lp_norm_bound})
      CHECK(bsk::theorem_from_string(bsk::to_string(id)) == id);
    CHECK(bsk::theorem_from_string("tau") == bsk::TheoremId::tau_estimate);
    CHECK(bsk::theorem_from_string("lpnorm") == bsk::TheoremId::lp_norm_bound);
    CHECK_THROWS_AS(bsk::theorem_from_string("bogus"), bsk::DomainError);
    CHECK(bsk::default_sweep(1) == std::vector<int>{8, 16, 32, 64, 128, 256});
    CHECK(bsk::default_sweep(2) == std::vector<int>{8, 16, 32});
    CHECK(bsk::default_sweep(3) == std::vector<int>{8, 16});
  }

  TEST_CASE("verify lp norm bound") {
    const std::vector<int> sweep{11, 16, 32};
    for (int d : {1, 2})
      for (const auto& f : catalog::standard(d))
        for (double p : {1.0, 2.0}) {
          const auto report = bsk::verify_theorem(bsk::TheoremId::lp_norm_bound, f, 5, sweep, p);
          REQUIRE(report.max_ratio.has_value());
          CHECK(*report.max_ratio <= 1.0 + 1e-8);
        }
  }

  TEST_CASE("verify estimates") {
    const std::vector<int> sweep{8, 16, 32, 64, 128};
    for (auto theorem : {bsk::TheoremId::tau_estimate, bsk::TheoremId::omega_estimate}) {
      const auto report = bsk::verify_theorem(theorem, catalog::kink(1), 2, sweep, 1.0);
      REQUIRE(report.rows.size() == sweep.size());
      REQUIRE(report.max_ratio.has_value());
      CHECK(std::isfinite(*report.max_ratio));
      for (std::size_t j = 1; j < report.rows.size(); ++j) CHECK(*report.rows[j].ratio <= *report.rows[j - 1].ratio);
      const auto constant = bsk::verify_theorem(theorem, catalog::constant(1), 2, sweep, 1.0);
      for (const auto& row : constant.rows) {
        CHECK(row.lhs <= 1e-14);
        CHECK(row.rhs == 0.0);
        CHECK_FALSE(row.ratio.has_value());
      }
      CHECK_FALSE(constant.max_ratio.has_value());
    }
    const auto smooth = bsk::verify_theorem(bsk::TheoremId::smooth_estimate, catalog::coordinate_squared(1), 2, sweep, 1.0);
    REQUIRE(smooth.max_ratio.has_value());
    CHECK(std::isfinite(*smooth.max_ratio));
    CHECK_THROWS_AS(bsk::verify_theorem(bsk::TheoremId::smooth_estimate, catalog::step(1), 2, sweep, 1.0),
                    bsk::DerivativeUnavailable);
    CHECK_THROWS_AS(bsk::verify_theorem(bsk::TheoremId::tau_estimate, catalog::kink(1), 2, std::vector<int>{4, 8}, 1.0),
                    bsk::RegimeError);
    CHECK_THROWS_AS(bsk::verify_theorem(bsk::TheoremId::tau_estimate, catalog::kink(1), 2, std::vector<int>{}, 1.0),
                    bsk::EmptyInputError);
  }
}
