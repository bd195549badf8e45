#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bsk/convergence.hpp"
#include "bsk/errors.hpp"
#include "bsk/report_io.hpp"
#include "doctest.h"

namespace {

bsk::ConvergenceConfig config_for(const std::string& function, int r, std::vector<int> n_list,
                                  std::vector<double> p_list = {1.0}, int d = 1) {
  auto config = bsk::ConvergenceConfig::for_dimension(d);
  config.function.source = function;
  config.r = r;
  config.n_list = std::move(n_list);
  config.p_list = std::move(p_list);
  return config;
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  return lines;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("bsk_test_" + name)).string();
}

}  // namespace

TEST_SUITE("convergence") {
  TEST_CASE("order fitting") {
    const std::vector<int> n{8, 16, 32, 64};
    std::vector<double> e;
    for (int k : n) e.push_back(3.0 / k);
    CHECK(*bsk::fit_order(n, e) == doctest::Approx(-1.0).epsilon(1e-12));
    const std::vector<double> zeros{1e-16, 1e-15, 0.0, 1.0};
    CHECK_FALSE(bsk::fit_order(n, zeros).has_value());
    const std::vector<int> two{8, 16};
    const std::vector<double> two_e{0.1, 0.05};
    CHECK_FALSE(bsk::fit_order(two, two_e).has_value());
  }

  TEST_CASE("constant function") {
    const auto report = bsk::run_convergence(config_for("one", 1, {5, 9, 17}, {1.0, 2.0}));
    REQUIRE(report.rows.size() == 6);
    for (const auto& row : report.rows) {
      CHECK(row.error_lp <= 1e-12);
      CHECK(row.error_sup <= 1e-12);
      CHECK_FALSE(row.ratio_tau.has_value());
    }
    for (const auto& fit : report.fits) CHECK_FALSE(fit.order.has_value());
  }

  TEST_CASE("coordinate function error") {
    const auto report = bsk::run_convergence(config_for("x1", 1, {9}));
    REQUIRE(report.rows.size() == 1);
    CHECK(std::abs(report.rows[0].error_lp - 0.025) <= 1e-10);
  }

  TEST_CASE("square of the coordinate converges at order one") {
    const auto report = bsk::run_convergence(config_for("x1^2", 2, {8, 16, 32, 64, 128, 256}));
    REQUIRE(report.fits.size() == 1);
    REQUIRE(report.fits[0].order.has_value());
    CHECK(*report.fits[0].order >= -1.1);
    CHECK(*report.fits[0].order <= -0.9);
    for (std::size_t j = 1; j < report.rows.size(); ++j) CHECK(report.rows[j].n > report.rows[j - 1].n);
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_AS(bsk::run_convergence(config_for("x1", 2, {4, 8})), bsk::RegimeError);
    CHECK_THROWS_AS(bsk::run_convergence(config_for("x1", 1, {8, 8})), bsk::DomainError);
    CHECK_THROWS_AS(bsk::run_convergence(config_for("x1", 1, {16, 8})), bsk::DomainError);
    CHECK_THROWS_AS(bsk::run_convergence(config_for("x1", 1, {})), bsk::EmptyInputError);
    auto big = config_for("x1", 1, {300}, {1.0}, 3);
    CHECK_THROWS_AS(bsk::run_convergence(big), bsk::BudgetError);
    CHECK_THROWS_AS(bsk::run_convergence(config_for("expr:x1 +", 1, {5})), bsk::ParseError);
  }

  TEST_CASE("two-dimensional sweep") {
    auto config = config_for("prod", 1, {5, 9}, {1.0, 2.0}, 2);
    const auto report = bsk::run_convergence(config);
    CHECK(report.rows.size() == 4);
    for (const auto& row : report.rows) {
      CHECK(row.error_lp > 0.0);
      CHECK(row.tau_scale > 0.0);
      CHECK(row.omega_scale > 0.0);
    }
  }
}

TEST_SUITE("convergence") {
  TEST_CASE("csv output") {
    auto config = config_for("kink", 2, {8, 16, 32}, {1.0, 2.0});
    const auto report = bsk::run_convergence(config);
    const std::string csv = bsk::to_csv(report);
    CHECK(csv.rfind("n,p,error_lp,error_sup,a_nr,tau_scale,omega_scale,ratio_tau,ratio_omega\n", 0) == 0);
    CHECK(count_lines(csv) == 1 + 3 * 2);
    CHECK(csv == bsk::to_csv(bsk::run_convergence(config)));

    bsk::ConvergenceReport empty;
    CHECK(bsk::to_csv(empty) == std::string(bsk::kConvergenceCsvHeader) + "\n");
    CHECK(bsk::format_double(0.1) == "0.10000000000000001");
    CHECK(bsk::format_double(NAN) == "nan");
  }

  TEST_CASE("json round trip is bit exact") {
    auto config = config_for("step:0.3", 1, {5, 9, 17}, {1.0, 2.0});
    config.function.declared_singularities.push_back({0, 0.7, bsk::SingularityKind::kink});
    config.p_list = {1.0, 1.5};
    const auto report = bsk::run_convergence(config);
    const auto path = temp_path("roundtrip.json");
    bsk::emit_report(report, bsk::ReportFormat::json, path);
    const auto back = bsk::read_convergence_json(path);
    std::filesystem::remove(path);
    REQUIRE(back.rows.size() == report.rows.size());
    for (std::size_t j = 0; j < report.rows.size(); ++j) {
      const auto& a = report.rows[j];
      const auto& b = back.rows[j];
      CHECK(a.n == b.n);
      CHECK(std::memcmp(&a.error_lp, &b.error_lp, sizeof(double)) == 0);
      CHECK(std::memcmp(&a.error_sup, &b.error_sup, sizeof(double)) == 0);
      CHECK(std::memcmp(&a.a_nr, &b.a_nr, sizeof(double)) == 0);
      CHECK(std::memcmp(&a.tau_scale, &b.tau_scale, sizeof(double)) == 0);
      CHECK(std::memcmp(&a.omega_scale, &b.omega_scale, sizeof(double)) == 0);
      CHECK(a.p == b.p);
      CHECK(a.ratio_tau == b.ratio_tau);
      CHECK(a.ratio_omega == b.ratio_omega);
    }
    CHECK(back.config.function.source == "step:0.3");
    CHECK(back.config.function.declared_singularities == report.config.function.declared_singularities);
    CHECK(back.config.n_list == report.config.n_list);
    CHECK(back.config.p_list == report.config.p_list);
    CHECK(back.config.grid.window_points == report.config.grid.window_points);
    CHECK(back.fits.size() == report.fits.size());
    CHECK(bsk::to_json(back) == bsk::to_json(report));
  }

  TEST_CASE("i/o failures") {
    bsk::ConvergenceReport empty;
    CHECK_THROWS_AS(bsk::emit_report(empty, bsk::ReportFormat::csv, "/nonexistent-dir/x.csv"), bsk::IoError);
    CHECK_THROWS_AS(bsk::read_convergence_json("/nonexistent-dir/x.json"), bsk::IoError);
    CHECK_THROWS_AS(bsk::convergence_from_json("{\"rows\": 3}"), bsk::IoError);
    CHECK_THROWS_AS(bsk::report_format_from_string("xml"), bsk::DomainError);
  }

  TEST_CASE("other report writers") {
    bsk::BoundRatioReport bounds;
    bounds.theorem = bsk::TheoremId::omega_estimate;
    bounds.rows.push_back({8, 0.5, 0.0, std::nullopt});
    CHECK(bsk::to_csv(bounds) == "theorem,p,r,d,n,lhs,rhs,ratio\nomega_estimate,1,0,1,8,0.5,0,nan\n");
    CHECK(bsk::to_json(bounds).find("\"max_ratio\": null") != std::string::npos);
    bsk::ModulusReport modulus;
    modulus.value = 0.25;
    CHECK(bsk::to_csv(modulus) == "kind,delta,p,value\nomega,0,1,0.25\n");
  }
}
