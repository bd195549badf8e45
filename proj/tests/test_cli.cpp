#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bsk/report_io.hpp"
#include "doctest.h"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const auto path = std::filesystem::temp_directory_path() / "bsk_cli_test.out";
  const std::string command = std::string(BSK_CLI_PATH) + " " + args + " > " + path.string() + " 2>/dev/null";
  const int status = std::system(command.c_str());
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::filesystem::remove(path);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, buffer.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("eval") {
    const auto r = run("eval --n 4 --r 1 --func x1 --x 0.5");
    CHECK(r.code == 0);
    const std::string prefix = "n,r,d,x1,value\n4,1,1,0.5,";
    REQUIRE(r.out.rfind(prefix, 0) == 0);
    CHECK(std::stod(r.out.substr(prefix.size())) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(run("eval --n 9 --r 2 --d 2 --func 'expr:x1*x2' --x 0.5,0.5 --format json").out.find("\"value\"") !=
          std::string::npos);
  }

  TEST_CASE("exit codes") {
    CHECK(run("").code == 2);
    CHECK(run("bogus").code == 2);
    CHECK(run("eval --n 4 --x 0.5 --func 'expr:x1 +'").code == 2);
    CHECK(run("eval --n 4 --x 0.5 --func 'expr:x2'").code == 2);
    CHECK(run("eval --n 4 --x 1.5").code == 2);
    CHECK(run("eval --n 4 --r 2 --d 2 --x 0.5,0.5").code == 3);
    CHECK(run("converge --r 2 --n-list 4,8").code == 3);
    CHECK(run("converge --d 3 --n-list 300").code == 4);
    CHECK(run("converge --n-list 5,9 --out /nonexistent-dir/out.csv").code == 5);
    CHECK(run("converge --n-list 9,5").code == 2);
    CHECK(run("--help").code == 0);
  }

  TEST_CASE("subcommands produce tables") {
    const auto moments = run("moments --n 9 --r 1 --points 3");
    CHECK(moments.code == 0);
    CHECK(moments.out.rfind("n,r,x,first,second,central,a_nr\n", 0) == 0);
    const auto bounds = run("bounds --r 2 --n-geom 5:40");
    CHECK(bounds.code == 0);
    CHECK(bounds.out.find("\n5,2,1,") != std::string::npos);
    CHECK(bounds.out.find("\n40,2,1,") != std::string::npos);
    const auto modulus = run("modulus --kind tau --func step --delta 0.1");
    CHECK(modulus.code == 0);
    CHECK(modulus.out.find("tau,0.10000000000000001,1,0.1") != std::string::npos);
    CHECK(run("modulus --kind local --func step --delta 0.1 --x 0.5").out.find(",1\n") != std::string::npos);
    const auto verify = run("verify --theorem lpnorm --func kink --r 2 --n-list 8,16");
    CHECK(verify.code == 0);
    CHECK(verify.out.rfind("theorem,p,r,d,n,lhs,rhs,ratio\n", 0) == 0);
  }

  TEST_CASE("converge is deterministic and well formed") {
    const std::string args = "converge --func kink --r 2 --n-geom 8:64 --p 1,2";
    const auto first = run(args);
    const auto second = run(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    std::size_t lines = 0;
    for (char c : first.out) lines += c == '\n';
    CHECK(lines == 1 + 4 * 2);

    const auto path = (std::filesystem::temp_directory_path() / "bsk_cli_test.json").string();
    CHECK(run("converge --func x1 --r 2 --n-list 9,19,39 --format json --out " + path).code == 0);
    const auto report = bsk::read_convergence_json(path);
    std::filesystem::remove(path);
    REQUIRE(report.rows.size() == 3);
    CHECK(std::abs(report.rows[0].error_lp - 0.025) <= 1e-10);
    CHECK(report.config.function.source == "x1");
  }
}
