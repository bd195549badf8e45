#include "bsk/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "bsk/errors.hpp"

namespace bsk {
namespace {

using nlohmann::json;

std::string csv_optional(const std::optional<double>& value) { return value ? format_double(*value) : "nan"; }

std::string json_number(double value) { return std::isfinite(value) ? format_double(value) : "null"; }

std::string json_optional(const std::optional<double>& value) { return value ? json_number(*value) : "null"; }

template <class T, class Format>
std::string json_array(const std::vector<T>& values, Format format) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format(values[i]);
  }
  return out + "]";
}

const char* kind_name(SingularityKind kind) {
  switch (kind) {
    case SingularityKind::jump: return "jump";
    case SingularityKind::kink: return "kink";
    case SingularityKind::extremum: return "extremum";
  }
  return "kink";
}

SingularityKind kind_from_name(const std::string& name) {
  if (name == "jump") return SingularityKind::jump;
  if (name == "kink") return SingularityKind::kink;
  if (name == "extremum") return SingularityKind::extremum;
  throw IoError("unknown singularity kind '" + name + "'");
}

std::string grid_json(const ModulusGrid& grid) {
  return "{\"window_points\": " + std::to_string(grid.window_points) +
         ", \"h_points\": " + std::to_string(grid.h_points) + ", \"x_cells\": " + std::to_string(grid.x_cells) +
         ", \"x_order\": " + std::to_string(grid.x_order) + "}";
}

std::optional<double> optional_number(const json& value) {
  if (value.is_null()) return std::nullopt;
  return value.get<double>();
}

double number(const json& value) {
  if (value.is_null()) return std::nan("");
  return value.get<double>();
}

}  // namespace

ReportFormat report_format_from_string(const std::string& name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw DomainError("unknown format '" + name + "' (expected csv or json)");
}

std::string json_quote(const std::string& s) { return json(s).dump(); }

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string to_csv(const ConvergenceReport& report) {
  std::string out = kConvergenceCsvHeader;
  out += '\n';
  for (const auto& row : report.rows) {
    out += std::to_string(row.n) + ',' + format_double(row.p) + ',' + format_double(row.error_lp) + ',' +
           format_double(row.error_sup) + ',' + format_double(row.a_nr) + ',' + format_double(row.tau_scale) + ',' +
           format_double(row.omega_scale) + ',' + csv_optional(row.ratio_tau) + ',' + csv_optional(row.ratio_omega) +
           '\n';
  }
  return out;
}

std::string to_json(const ConvergenceReport& report) {
  const ConvergenceConfig& c = report.config;
  std::string out = "{\n  \"config\": {\n";
  out += "    \"function\": " + json_quote(c.function.source) + ",\n";
  out += "    \"declared_singularities\": " + json_array(c.function.declared_singularities, [](const Singularity& s) {
           return "{\"axis\": " + std::to_string(s.axis) + ", \"at\": " + json_number(s.at) + ", \"kind\": \"" +
                  kind_name(s.kind) + "\"}";
         }) + ",\n";
  out += "    \"r\": " + std::to_string(c.r) + ",\n";
  out += "    \"d\": " + std::to_string(c.d) + ",\n";
  out += "    \"n_list\": " + json_array(c.n_list, [](int n) { return std::to_string(n); }) + ",\n";
  out += "    \"p_list\": " + json_array(c.p_list, json_number) + ",\n";
  out += "    \"quad_order\": " + std::to_string(c.quad_order) + ",\n";
  out += "    \"grid\": " + grid_json(c.grid) + ",\n";
  out += "    \"sup_points\": " + std::to_string(c.sup_points) + ",\n";
  out += "    \"term_budget\": " + std::to_string(c.term_budget) + "\n  },\n";
  out += "  \"rows\": [";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    out += i ? ",\n    " : "\n    ";
    out += "{\"n\": " + std::to_string(row.n) + ", \"p\": " + json_number(row.p) +
           ", \"error_lp\": " + json_number(row.error_lp) + ", \"error_sup\": " + json_number(row.error_sup) +
           ", \"a_nr\": " + json_number(row.a_nr) + ", \"tau_scale\": " + json_number(row.tau_scale) +
           ", \"omega_scale\": " + json_number(row.omega_scale) + ", \"ratio_tau\": " + json_optional(row.ratio_tau) +
           ", \"ratio_omega\": " + json_optional(row.ratio_omega) + "}";
  }
  out += report.rows.empty() ? "],\n" : "\n  ],\n";
  out += "  \"fits\": " + json_array(report.fits, [](const OrderFit& fit) {
           return "{\"p\": " + json_number(fit.p) + ", \"order\": " + json_optional(fit.order) + "}";
         }) + "\n}\n";
  return out;
}

ConvergenceReport convergence_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    ConvergenceReport report;
    const json& c = doc.at("config");
    ConvergenceConfig& config = report.config;
    config.function.source = c.at("function").get<std::string>();
    for (const auto& s : c.at("declared_singularities"))
      config.function.declared_singularities.push_back(
          {s.at("axis").get<int>(), s.at("at").get<double>(), kind_from_name(s.at("kind").get<std::string>())});
    config.r = c.at("r").get<int>();
    config.d = c.at("d").get<int>();
    config.n_list = c.at("n_list").get<std::vector<int>>();
    config.p_list.clear();
    for (const auto& p : c.at("p_list")) config.p_list.push_back(number(p));
    config.quad_order = c.at("quad_order").get<int>();
    const json& g = c.at("grid");
    config.grid = {g.at("window_points").get<int>(), g.at("h_points").get<int>(), g.at("x_cells").get<int>(),
                   g.at("x_order").get<int>()};
    config.sup_points = c.at("sup_points").get<int>();
    config.term_budget = c.at("term_budget").get<std::size_t>();
    for (const auto& r : doc.at("rows")) {
      ConvergenceRow row;
      row.n = r.at("n").get<int>();
      row.p = number(r.at("p"));
      row.error_lp = number(r.at("error_lp"));
      row.error_sup = number(r.at("error_sup"));
      row.a_nr = number(r.at("a_nr"));
      row.tau_scale = number(r.at("tau_scale"));
      row.omega_scale = number(r.at("omega_scale"));
      row.ratio_tau = optional_number(r.at("ratio_tau"));
      row.ratio_omega = optional_number(r.at("ratio_omega"));
      report.rows.push_back(row);
    }
    for (const auto& f : doc.at("fits")) report.fits.push_back({number(f.at("p")), optional_number(f.at("order"))});
    return report;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed convergence report: ") + e.what());
  }
}

ConvergenceReport read_convergence_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return convergence_from_json(buffer.str());
}

std::string to_csv(const BoundRatioReport& report) {
  std::string out = "theorem,p,r,d,n,lhs,rhs,ratio\n";
  for (const auto& row : report.rows)
    out += to_string(report.theorem) + ',' + format_double(report.p) + ',' + std::to_string(report.r) + ',' +
           std::to_string(report.d) + ',' + std::to_string(row.n) + ',' + format_double(row.lhs) + ',' +
           format_double(row.rhs) + ',' + csv_optional(row.ratio) + '\n';
  return out;
}

std::string to_json(const BoundRatioReport& report) {
  std::string out = "{\n  \"theorem\": " + json_quote(to_string(report.theorem)) + ",\n";
  out += "  \"function\": " + json_quote(report.function) + ",\n";
  out += "  \"p\": " + json_number(report.p) + ",\n";
  out += "  \"r\": " + std::to_string(report.r) + ",\n";
  out += "  \"d\": " + std::to_string(report.d) + ",\n";
  out += "  \"rows\": [";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    out += i ? ",\n    " : "\n    ";
    out += "{\"n\": " + std::to_string(row.n) + ", \"lhs\": " + json_number(row.lhs) +
           ", \"rhs\": " + json_number(row.rhs) + ", \"ratio\": " + json_optional(row.ratio) + "}";
  }
  out += report.rows.empty() ? "],\n" : "\n  ],\n";
  out += "  \"max_ratio\": " + json_optional(report.max_ratio) + "\n}\n";
  return out;
}

std::string to_csv(const ModulusReport& report) {
  std::string out = "kind,delta,p,value\n";
  out += to_string(report.kind) + ',' + format_double(report.delta) + ',' + format_double(report.p) + ',' +
         format_double(report.value) + '\n';
  return out;
}

std::string to_json(const ModulusReport& report) {
  std::string out = "{\n  \"kind\": " + json_quote(to_string(report.kind)) + ",\n";
  out += "  \"delta\": " + json_number(report.delta) + ",\n";
  out += "  \"p\": " + json_number(report.p) + ",\n";
  out += "  \"value\": " + json_number(report.value) + ",\n";
  out += "  \"grid\": " + grid_json(report.grid) + ",\n";
  out += "  \"point\": " + json_array(report.point, json_number) + "\n}\n";
  return out;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed to write to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed to write '" + path + "'");
}

}  // namespace bsk
