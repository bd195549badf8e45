#pragma once

#include <optional>
#include <string>

#include "bsk/bounds.hpp"
#include "bsk/convergence.hpp"
#include "bsk/moduli.hpp"

namespace bsk {

enum class ReportFormat { csv, json };

/// "csv" or "json"; DomainError otherwise.
ReportFormat report_format_from_string(const std::string& name);

/// %.17g; non-finite values print as nan, inf, -inf.
std::string format_double(double value);

/// s as a quoted, escaped JSON string.
std::string json_quote(const std::string& s);

/// Column header of convergence CSV output.
inline constexpr const char* kConvergenceCsvHeader =
    "n,p,error_lp,error_sup,a_nr,tau_scale,omega_scale,ratio_tau,ratio_omega";

std::string to_csv(const ConvergenceReport& report);
std::string to_json(const ConvergenceReport& report);
/// Inverse of to_json. Throws IoError on malformed input.
ConvergenceReport convergence_from_json(const std::string& text);
ConvergenceReport read_convergence_json(const std::string& path);

std::string to_csv(const BoundRatioReport& report);
std::string to_json(const BoundRatioReport& report);

std::string to_csv(const ModulusReport& report);
std::string to_json(const ModulusReport& report);

/// Writes text to path, or to stdout when path is empty or "-". IoError on failure.
void write_output(const std::string& text, const std::string& path);

template <class Report>
void emit_report(const Report& report, ReportFormat format, const std::string& path) {
  write_output(format == ReportFormat::csv ? to_csv(report) : to_json(report), path);
}

}  // namespace bsk
