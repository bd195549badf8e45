#include <cmath>
#include <vector>

#include "bsk/errors.hpp"
#include "bsk/norms.hpp"
#include "bsk/quadrature.hpp"
#include "bsk/catalog.hpp"
#include "doctest.h"

TEST_SUITE("quadrature") {
  TEST_CASE("gauss-legendre weights and exactness") {
    for (int order : {1, 2, 5, 8, 16, 40}) {
      const auto rule = bsk::QuadratureRule::gauss_legendre(order);
      REQUIRE(rule.order() == order);
      double sum = 0.0;
      for (double w : rule.weights()) {
        CHECK(w > 0.0);
        sum += w;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-14);
      for (double x : rule.nodes()) CHECK((x > 0.0 && x < 1.0));
      for (int degree = 0; degree <= 2 * order - 1; ++degree) {
        const double value = rule.integrate([degree](double x) { return std::pow(x, degree); }, 0.0, 1.0);
        CHECK(std::abs(value - 1.0 / (degree + 1)) <= 1e-13);
      }
    }
    CHECK_THROWS_AS(bsk::QuadratureRule::gauss_legendre(0), bsk::DomainError);
  }

  TEST_CASE("affine mapping") {
    const auto rule = bsk::QuadratureRule::gauss_legendre(8);
    CHECK(rule.integrate([](double x) { return std::exp(x); }, 0.25, 0.75) ==
          doctest::Approx(std::exp(0.75) - std::exp(0.25)).epsilon(1e-14));
  }

  TEST_CASE("partitions merge extra breakpoints") {
    const std::vector<double> extra{0.5, 0.3, 2.0, 0.3 + 1e-16};
    const auto p = bsk::make_partition(0.0, 1.0, 4, extra);
    const std::vector<double> expected{0.0, 0.25, 0.3, 0.5, 0.75, 1.0};
    REQUIRE(p.size() == expected.size());
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i] == doctest::Approx(expected[i]).epsilon(1e-15));
  }

  TEST_CASE("composite rule integrates piecewise functions exactly") {
    const std::vector<double> breaks{0.0, 0.3, 1.0};
    const auto axis = bsk::composite_rule(breaks, bsk::QuadratureRule::gauss_legendre(4));
    CHECK(axis.size() == 8);
    double total = 0.0;
    for (std::size_t j = 0; j < axis.size(); ++j) total += axis.weights[j] * std::abs(axis.nodes[j] - 0.3);
    CHECK(total == doctest::Approx(0.5 * 0.09 + 0.5 * 0.49).epsilon(1e-15));
  }

  TEST_CASE("tensor nodes run with the first axis fastest") {
    std::vector<bsk::AxisRule> axes{{{0.1, 0.2}, {0.5, 0.5}}, {{0.7, 0.8, 0.9}, {0.2, 0.3, 0.5}}};
    std::vector<std::pair<double, double>> visited;
    double weight_sum = 0.0;
    bsk::for_each_tensor_node(std::span<const bsk::AxisRule>(axes), [&](std::span<const double> x, double w) {
      visited.emplace_back(x[0], x[1]);
      weight_sum += w;
    });
    REQUIRE(visited.size() == 6);
    CHECK(visited[0] == std::make_pair(0.1, 0.7));
    CHECK(visited[1] == std::make_pair(0.2, 0.7));
    CHECK(visited[2] == std::make_pair(0.1, 0.8));
    CHECK(weight_sum == doctest::Approx(1.0));
  }

  TEST_CASE("lp norms of catalog functions") {
    const auto rule = bsk::QuadratureRule::gauss_legendre(8);
    CHECK(bsk::lp_norm(bsk::catalog::coordinate(1), 1.0, 16, rule) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(bsk::lp_norm(bsk::catalog::coordinate(1), 2.0, 16, rule) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(bsk::lp_norm(bsk::catalog::kink(1, 0.3), 1.0, 7, rule) == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-14));
    CHECK(bsk::lp_norm(bsk::catalog::step(2, 0.37), 1.0, 5, rule) == doctest::Approx(0.63).epsilon(1e-14));
    CHECK(bsk::lp_norm(bsk::catalog::product(2), 2.0, 8, rule) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(bsk::check_exponent(0.5), bsk::DomainError);
    CHECK_THROWS_AS(bsk::check_exponent(INFINITY), bsk::DomainError);
  }
}
