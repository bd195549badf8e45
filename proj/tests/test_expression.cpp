#include <cmath>
#include <string>
#include <vector>

#include "bsk/catalog.hpp"
#include "bsk/errors.hpp"
#include "bsk/expression.hpp"
#include "bsk/function_spec.hpp"
#include "bsk/moduli.hpp"
#include "doctest.h"
#include "oracles.hpp"

namespace expr = bsk::expr;

TEST_SUITE("expression") {
  TEST_CASE("evaluation and precedence") {
    auto value = [](const std::string& text, std::vector<double> x) { return expr::evaluate(*expr::parse(text, 3), x); };
    const std::vector<double> x{0.5, 0.25, 2.0};
    CHECK(value("1 + 2 * 3", x) == 7.0);
    CHECK(value("(1 + 2) * 3", x) == 9.0);
    CHECK(value("2^3^2", x) == 512.0);
    CHECK(value("-2^2", x) == -4.0);
    CHECK(value("2^-1", x) == 0.5);
    CHECK(value("8 / 4 / 2", x) == 1.0);
    CHECK(value("5 - 3 - 1", x) == 1.0);
    CHECK(value("x1 * x2 + x3", x) == 2.125);
    CHECK(value("abs(x1 - 0.75)", x) == 0.25);
    CHECK(value("min(x1, x2) + max(x1, x2)", x) == 0.75);
    CHECK(value("step(x1 - 0.5)", x) == 1.0);
    CHECK(value("step(x2, 0.5)", x) == 0.0);
    CHECK(value("exp(0) + log(1) + sqrt(4) + sin(0) + cos(0)", x) == 4.0);
    CHECK(value("pi", x) == doctest::Approx(M_PI));
    CHECK(value("1.5e-1 + .5", x) == doctest::Approx(0.65));
  }

  TEST_CASE("round trip") {
    const std::vector<std::string> samples{
        "x1",
        "x1 - (x2 - x3)",
        "x1 - x2 - x3",
        "-x1^2",
        "(-x1)^2",
        "x1^x2^x3",
        "(x1^x2)^x3",
        "2^-x1",
        "--x1",
        "x1 * -x2",
        "x1 / (x2 * x3)",
        "x1 / x2 * x3",
        "abs(x1 - 0.5) + step(x2, 0.25) * min(x1, max(x2, x3))",
        "exp(sin(pi * x1)) / (1 + sqrt(x2))",
        "0.1 + 1e-7 * x3",
        "(x1 + x2)^(x3 - 1)",
    };
    for (const auto& text : samples) {
      const auto tree = expr::parse(text, 3);
      const std::string printed = expr::to_string(tree);
      INFO(text << " -> " << printed);
      const auto again = expr::parse(printed, 3);
      CHECK(expr::equal(tree, again));
      CHECK(expr::to_string(again) == printed);
    }
    CHECK(expr::to_string(expr::parse("x1 - (x2 - x3)", 3)) == "x1 - (x2 - x3)");
    CHECK(expr::to_string(expr::parse("((x1))*(x2)", 3)) == "x1*x2");
    CHECK_FALSE(expr::equal(expr::parse("x1 - x2 - x3", 3), expr::parse("x1 - (x2 - x3)", 3)));
  }

  TEST_CASE("errors carry positions") {
    auto position = [](const std::string& text) -> long {
      try {
        expr::parse(text, 2);
      } catch (const bsk::ParseError& e) {
        return static_cast<long>(e.position());
      }
      return -1;
    };
    CHECK(position("x1 +") == 4);
    CHECK(position("x1 + * x2") == 5);
    CHECK(position("(x1") == 3);
    CHECK(position("x1 x2") == 3);
    CHECK(position("foo(x1)") == 0);
    CHECK(position("abs(x1, x2)") == 0);
    CHECK(position("x") == 0);
    CHECK(position("x1 # 2") == 3);
    CHECK_THROWS_AS(expr::parse("x3", 2), bsk::ArityError);
    CHECK_THROWS_AS(expr::parse("x0", 2), bsk::ArityError);
  }

  TEST_CASE("fields from expressions") {
    const auto coordinate = expr::parse_function("x1", 2);
    CHECK(coordinate.arity() == 2);
    CHECK(coordinate({0.3, 0.8}) == 0.3);
    const auto kink = expr::parse_function("abs(x1 - 0.5)", 1);
    REQUIRE(kink.singularities().size() == 1);
    CHECK(kink.singularities()[0].at == 0.5);
    CHECK(kink.singularities()[0].kind == bsk::SingularityKind::kink);
    CHECK_FALSE(kink.smooth_along(0));
    const auto jump = expr::parse_function("step(2*x2 - 0.5)", 2);
    REQUIRE(jump.singularities().size() == 1);
    CHECK(jump.singularities()[0].axis == 1);
    CHECK(jump.singularities()[0].at == 0.25);
    CHECK(jump.singularities()[0].kind == bsk::SingularityKind::jump);
    CHECK(jump.smooth_along(0));
    CHECK(expr::parse_function("max(x1, 0.3)", 1).singularities().at(0).at == doctest::Approx(0.3));
    const auto f = expr::parse_function("x1^2 * x2", 2);
    CHECK_THROWS_AS(f({0.5, 2.0}), bsk::DomainError);
  }

  TEST_CASE("catalog agreement") {
    const auto parsed = expr::parse_function("abs(x1-0.5)", 1);
    const auto builtin = bsk::catalog::kink(1);
    for (double x : oracle::linspace(1001)) REQUIRE(parsed({x}) == builtin({x}));
    const auto parsed_step = expr::parse_function("step(x1, 0.5)", 1);
    for (double x : oracle::linspace(1001)) REQUIRE(parsed_step({x}) == bsk::catalog::step(1)({x}));
    // singularity handling gives the same moduli
    const auto grid = bsk::ModulusGrid::for_dimension(1);
    CHECK(bsk::tau_modulus(parsed_step, 0.1, 1.0, grid) ==
          doctest::Approx(bsk::tau_modulus(bsk::catalog::step(1), 0.1, 1.0, grid)).epsilon(1e-14));
  }

  TEST_CASE("symbolic derivatives") {
    const auto f = expr::parse_function("x1^2 * x2 + sin(x1) * exp(x2)", 2);
    const bsk::MultiIndexAlpha d1(2, 1), d2(2, 2), d12(2, 3);
    REQUIRE(f.has_exact_partial(d1));
    REQUIRE(f.has_exact_partial(d12));
    for (double a : oracle::linspace(7))
      for (double b : oracle::linspace(7)) {
        const std::vector<double> x{a, b};
        CHECK(bsk::mixed_partial(f, d1)(x) == doctest::Approx(2 * a * b + std::cos(a) * std::exp(b)).epsilon(1e-14));
        CHECK(bsk::mixed_partial(f, d2)(x) == doctest::Approx(a * a + std::sin(a) * std::exp(b)).epsilon(1e-14));
        CHECK(bsk::mixed_partial(f, d12)(x) == doctest::Approx(2 * a + std::cos(a) * std::exp(b)).epsilon(1e-14));
      }
    const auto derivative = expr::differentiate(expr::parse("x1^3 + 4*x2", 2), 0);
    CHECK(expr::evaluate(*derivative, std::vector<double>{2.0, 7.0}) == 12.0);
    CHECK(expr::to_string(expr::differentiate(expr::parse("5*x2", 2), 0)) == "0");
    CHECK_THROWS_AS(expr::differentiate(expr::parse("abs(x1 - 0.5)", 1), 0), bsk::DerivativeUnavailable);
    CHECK(expr::to_string(expr::differentiate(expr::parse("abs(x1 - 0.5) * x2", 2), 1)) == "abs(x1 - 0.5)");
    const auto partial_kink = expr::parse_function("abs(x1 - 0.5) * x2", 2);
    CHECK_FALSE(partial_kink.has_exact_partial(d1));
    CHECK(partial_kink.has_exact_partial(d2));
  }

  TEST_CASE("function specs") {
    CHECK(bsk::make_field({"x2^2", {}}, 2)({0.1, 0.5}) == 0.25);
    CHECK(bsk::make_field({"expr:x1 + x2", {}}, 2)({0.1, 0.5}) == doctest::Approx(0.6));
    CHECK(bsk::make_field({"kink:0.3", {}}, 1)({0.5}) == doctest::Approx(0.2));
    const auto declared = bsk::make_field({"expr:x1", {{0, 0.4, bsk::SingularityKind::jump}}}, 1);
    CHECK(declared.breakpoints(0) == std::vector<double>{0.4});
    CHECK_THROWS_AS(bsk::make_field({"nope", {}}, 1), bsk::DomainError);
    CHECK_THROWS_AS(bsk::make_field({"x1", {{0, 1.5, bsk::SingularityKind::jump}}}, 1), bsk::DomainError);
    CHECK_THROWS_AS(bsk::make_field({"x1", {{3, 0.5, bsk::SingularityKind::jump}}}, 1), bsk::DomainError);
    CHECK_THROWS_AS(bsk::make_field({"expr:x1 +", {}}, 1), bsk::ParseError);
  }
}
