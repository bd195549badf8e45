// Command-line front end for the BSK operator library.
//
// Exit codes: 0 success, 2 usage or parse error, 3 regime violation,
// 4 term budget exceeded, 5 I/O failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bsk/bounds.hpp"
#include "bsk/bsk_operator.hpp"
#include "bsk/convergence.hpp"
#include "bsk/errors.hpp"
#include "bsk/function_spec.hpp"
#include "bsk/moduli.hpp"
#include "bsk/report_io.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kRegime = 3, kBudget = 4, kIo = 5 };

struct Options {
  int n = 9;
  int r = 0;
  int d = 1;
  std::vector<double> p{1.0};
  std::string func = "x1";
  std::vector<std::string> singularities;
  std::vector<int> n_list;
  std::string n_geom;
  int quad_order = bsk::QuadratureRule::kDefaultOrder;
  std::optional<int> grid;
  std::optional<int> sup_points;
  std::size_t budget = bsk::kDefaultTermBudget;
  std::string out;
  std::string format = "csv";
  std::vector<double> x;
  std::string kind = "omega";
  double delta = 0.1;
  std::string theorem = "tau";
  int points = 11;
};

// "start:stop" -> start, 2 start, 4 start, ... up to stop.
std::vector<int> geometric_list(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw bsk::DomainError("--n-geom expects start:stop");
  int start = 0, stop = 0;
  try {
    start = std::stoi(text.substr(0, colon));
    stop = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw bsk::DomainError("--n-geom expects integers start:stop");
  }
  if (start < 1 || stop < start) throw bsk::DomainError("--n-geom needs 1 <= start <= stop");
  std::vector<int> list;
  for (long long n = start; n <= stop; n *= 2) list.push_back(static_cast<int>(n));
  return list;
}

std::vector<int> resolve_n_list(const Options& o, std::vector<int> fallback) {
  if (!o.n_list.empty() && !o.n_geom.empty()) throw bsk::DomainError("give either --n-list or --n-geom");
  if (!o.n_geom.empty()) return geometric_list(o.n_geom);
  if (!o.n_list.empty()) return o.n_list;
  return fallback;
}

// axis:at:kind with a 1-based axis, e.g. 1:0.5:jump.
bsk::Singularity parse_singularity(const std::string& text) {
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos)
    throw bsk::DomainError("--singularity expects axis:at:kind");
  bsk::Singularity s;
  try {
    s.axis = std::stoi(text.substr(0, first)) - 1;
    s.at = std::stod(text.substr(first + 1, second - first - 1));
  } catch (const std::exception&) {
    throw bsk::DomainError("--singularity expects axis:at:kind");
  }
  const std::string kind = text.substr(second + 1);
  if (kind == "jump")
    s.kind = bsk::SingularityKind::jump;
  else if (kind == "kink")
    s.kind = bsk::SingularityKind::kink;
  else if (kind == "extremum")
    s.kind = bsk::SingularityKind::extremum;
  else
    throw bsk::DomainError("unknown singularity kind '" + kind + "'");
  return s;
}

bsk::FunctionSpec function_spec(const Options& o) {
  bsk::FunctionSpec spec{o.func, {}};
  for (const auto& s : o.singularities) spec.declared_singularities.push_back(parse_singularity(s));
  return spec;
}

bsk::ModulusGrid modulus_grid(const Options& o) {
  bsk::ModulusGrid grid = bsk::ModulusGrid::for_dimension(o.d);
  if (o.grid) {
    if (*o.grid < 2) throw bsk::DomainError("--grid must be at least 2");
    grid.window_points = *o.grid;
  }
  return grid;
}

std::string join_point(const std::vector<double>& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + bsk::format_double(x[i]);
  return s;
}

std::string header_columns(const char* prefix, int d) {
  std::string s;
  for (int i = 1; i <= d; ++i) s += std::string(i > 1 ? "," : "") + prefix + std::to_string(i);
  return s;
}

void run_eval(const Options& o) {
  const bsk::OperatorParams params(o.n, o.r, o.d);
  if (static_cast<int>(o.x.size()) != o.d) throw bsk::DomainError("--x needs exactly d coordinates");
  const bsk::ScalarField f = bsk::make_field(function_spec(o), o.d);
  const bsk::BskOperator op(params, f, bsk::QuadratureRule::gauss_legendre(o.quad_order), o.budget);
  const double value = op(o.x);
  const bsk::ReportFormat format = bsk::report_format_from_string(o.format);
  std::string text;
  if (format == bsk::ReportFormat::csv) {
    text = "n,r,d," + header_columns("x", o.d) + ",value\n" + std::to_string(o.n) + ',' + std::to_string(o.r) + ',' +
           std::to_string(o.d) + ',' + join_point(o.x) + ',' + bsk::format_double(value) + '\n';
  } else {
    text = "{\"n\": " + std::to_string(o.n) + ", \"r\": " + std::to_string(o.r) + ", \"d\": " + std::to_string(o.d) +
           ", \"function\": " + bsk::json_quote(o.func) + ", \"x\": [" + join_point(o.x) +
           "], \"value\": " + bsk::format_double(value) + "}\n";
  }
  bsk::write_output(text, o.out);
}

void run_moments(const Options& o) {
  const bsk::OperatorParams params(o.n, o.r, o.d);
  params.require_strict();
  if (o.points < 2) throw bsk::DomainError("--points must be at least 2");
  const bsk::ReportFormat format = bsk::report_format_from_string(o.format);
  const double a_nr = bsk::compute_a_nr(params);
  std::string text = format == bsk::ReportFormat::csv ? "n,r,x,first,second,central,a_nr\n" : "[";
  for (int j = 0; j < o.points; ++j) {
    const double x[1] = {static_cast<double>(j) / (o.points - 1)};
    const double first = bsk::moment_first(params, 0, x);
    const double second = bsk::moment_second(params, 0, x);
    const double central = bsk::central_second_moment(params, 0, x);
    if (format == bsk::ReportFormat::csv) {
      text += std::to_string(o.n) + ',' + std::to_string(o.r) + ',' + bsk::format_double(x[0]) + ',' +
              bsk::format_double(first) + ',' + bsk::format_double(second) + ',' + bsk::format_double(central) + ',' +
              bsk::format_double(a_nr) + '\n';
    } else {
      text += std::string(j ? ",\n " : "\n ") + "{\"n\": " + std::to_string(o.n) + ", \"r\": " + std::to_string(o.r) +
              ", \"x\": " + bsk::format_double(x[0]) + ", \"first\": " + bsk::format_double(first) +
              ", \"second\": " + bsk::format_double(second) + ", \"central\": " + bsk::format_double(central) +
              ", \"a_nr\": " + bsk::format_double(a_nr) + "}";
    }
  }
  if (format == bsk::ReportFormat::json) text += "\n]\n";
  bsk::write_output(text, o.out);
}

void run_modulus(const Options& o) {
  const bsk::ScalarField f = bsk::make_field(function_spec(o), o.d);
  const bsk::ModulusKind kind = bsk::modulus_kind_from_string(o.kind);
  if (kind == bsk::ModulusKind::local && static_cast<int>(o.x.size()) != o.d)
    throw bsk::DomainError("the local modulus needs --x with d coordinates");
  const auto report = bsk::compute_modulus(kind, f, o.delta, o.p.front(), modulus_grid(o), o.x);
  bsk::emit_report(report, bsk::report_format_from_string(o.format), o.out);
}

void run_bounds(const Options& o) {
  const std::vector<int> n_list = resolve_n_list(o, {o.n});
  const bsk::ReportFormat format = bsk::report_format_from_string(o.format);
  std::string text = format == bsk::ReportFormat::csv ? "n,r,d,a_nr,m_r,b_r,b_r_over_n1\n" : "[";
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const bsk::OperatorParams params(n_list[i], o.r, o.d);
    const auto q = bsk::BoundQuantities::of(params);
    const double scaled = q.b_r / (n_list[i] + 1.0);
    if (format == bsk::ReportFormat::csv) {
      text += std::to_string(n_list[i]) + ',' + std::to_string(o.r) + ',' + std::to_string(o.d) + ',' +
              bsk::format_double(q.a_nr) + ',' + bsk::format_double(q.m_r) + ',' + bsk::format_double(q.b_r) + ',' +
              bsk::format_double(scaled) + '\n';
    } else {
      text += std::string(i ? ",\n " : "\n ") + "{\"n\": " + std::to_string(n_list[i]) +
              ", \"r\": " + std::to_string(o.r) + ", \"d\": " + std::to_string(o.d) +
              ", \"a_nr\": " + bsk::format_double(q.a_nr) + ", \"m_r\": " + bsk::format_double(q.m_r) +
              ", \"b_r\": " + bsk::format_double(q.b_r) + ", \"b_r_over_n1\": " + bsk::format_double(scaled) + "}";
    }
  }
  if (format == bsk::ReportFormat::json) text += "\n]\n";
  bsk::write_output(text, o.out);
}

void run_converge(const Options& o) {
  bsk::ConvergenceConfig config = bsk::ConvergenceConfig::for_dimension(o.d);
  config.function = function_spec(o);
  config.r = o.r;
  config.n_list = resolve_n_list(o, bsk::default_sweep(o.d));
  config.p_list = o.p;
  config.quad_order = o.quad_order;
  config.grid = modulus_grid(o);
  if (o.sup_points) config.sup_points = *o.sup_points;
  config.term_budget = o.budget;
  const auto report = bsk::run_convergence(config);
  bsk::emit_report(report, bsk::report_format_from_string(o.format), o.out);
}

void run_verify(const Options& o) {
  const bsk::ScalarField f = bsk::make_field(function_spec(o), o.d);
  const bsk::TheoremId theorem = bsk::theorem_from_string(o.theorem);
  const std::vector<int> n_list = resolve_n_list(o, bsk::default_sweep(o.d));
  bsk::VerifyOptions options;
  options.rule = bsk::QuadratureRule::gauss_legendre(o.quad_order);
  options.grid = modulus_grid(o);
  options.term_budget = o.budget;
  const auto report = bsk::verify_theorem(theorem, f, o.r, n_list, o.p.front(), options);
  bsk::emit_report(report, bsk::report_format_from_string(o.format), o.out);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Brass-Stancu-Kantorovich operators on the unit cube"};
  app.require_subcommand(1);

  auto add_operator = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "degree n")->check(CLI::NonNegativeNumber);
    sub->add_option("--r", o.r, "shift parameter r")->check(CLI::NonNegativeNumber);
    sub->add_option("--d", o.d, "dimension d")->check(CLI::PositiveNumber);
  };
  auto add_function = [&](CLI::App* sub) {
    sub->add_option("--func", o.func, "catalog name or expr:<expression>");
    sub->add_option("--singularity", o.singularities, "declared singularity axis:at:kind (1-based axis)");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_sweep = [&](CLI::App* sub) {
    sub->add_option("--n-list", o.n_list, "comma separated degrees")->delimiter(',');
    sub->add_option("--n-geom", o.n_geom, "doubling sweep start:stop");
  };
  auto add_numerics = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "exponent(s) p >= 1")->delimiter(',');
    sub->add_option("--quad-order", o.quad_order, "Gauss-Legendre nodes per cell")->check(CLI::Range(1, 128));
    sub->add_option("--grid", o.grid, "window samples per axis for moduli");
    sub->add_option("--budget", o.budget, "maximum number of terms (n+1)^d");
  };

  CLI::App* eval = app.add_subcommand("eval", "K^d_{n,r} f at one point");
  add_operator(eval);
  add_function(eval);
  add_output(eval);
  eval->add_option("--x", o.x, "evaluation point")->delimiter(',')->required();
  eval->add_option("--quad-order", o.quad_order, "Gauss-Legendre nodes per cell")->check(CLI::Range(1, 128));
  eval->add_option("--budget", o.budget, "maximum number of terms (n+1)^d");

  CLI::App* moments = app.add_subcommand("moments", "closed-form moments on a grid of x");
  add_operator(moments);
  add_output(moments);
  moments->add_option("--points", o.points, "number of x values in [0,1]");

  CLI::App* modulus = app.add_subcommand("modulus", "moduli of smoothness and related quantities");
  add_operator(modulus);
  add_function(modulus);
  add_output(modulus);
  add_numerics(modulus);
  modulus->add_option("--kind", o.kind, "omega, local, tau, sobolev or kfunc")
      ->check(CLI::IsMember({"omega", "local", "tau", "sobolev", "kfunc"}));
  modulus->add_option("--delta", o.delta, "step delta (t for kfunc)");
  modulus->add_option("--x", o.x, "point for the local modulus")->delimiter(',');

  CLI::App* bounds = app.add_subcommand("bounds", "A_{n,r}, M_r and B_r");
  add_operator(bounds);
  add_output(bounds);
  add_sweep(bounds);

  CLI::App* converge = app.add_subcommand("converge", "error sweep over n");
  add_operator(converge);
  add_function(converge);
  add_output(converge);
  add_sweep(converge);
  add_numerics(converge);
  converge->add_option("--sup-points", o.sup_points, "points per axis of the sup-error grid");

  CLI::App* verify = app.add_subcommand("verify", "per-n ratios of an error estimate");
  add_operator(verify);
  add_function(verify);
  add_output(verify);
  add_sweep(verify);
  add_numerics(verify);
  verify->add_option("--theorem", o.theorem, "tau, smooth, omega or lpnorm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (o.p.empty()) throw bsk::DomainError("--p needs at least one value");
    if (*eval) run_eval(o);
    if (*moments) run_moments(o);
    if (*modulus) run_modulus(o);
    if (*bounds) run_bounds(o);
    if (*converge) run_converge(o);
    if (*verify) run_verify(o);
  } catch (const bsk::RegimeError& e) {
    std::fprintf(stderr, "regime error: %s\n", e.what());
    return kRegime;
  } catch (const bsk::BudgetError& e) {
    std::fprintf(stderr, "budget error: %s\n", e.what());
    return kBudget;
  } catch (const bsk::IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kIo;
  } catch (const bsk::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kOk;
}
