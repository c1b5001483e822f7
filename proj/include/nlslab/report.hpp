#ifndef NLSLAB_REPORT_HPP
#define NLSLAB_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace nlslab {

// Plot-ready numeric table; booleans are encoded as 0/1 columns.
struct Table {
  std::string name;
  std::vector<std::string> headers;
  std::vector<std::vector<double>> rows;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  std::string expected;  // human-readable bound, e.g. "< 1e-6"
};

// Everything a run produces: config echo, tables, named scalars,
// pass/fail checks, versions and timing. Serializes to JSON with stable
// keys and round-trips bit-identically.
struct RunReport {
  std::string name;
  std::string kind;
  nlohmann::json config_echo;
  std::vector<Table> tables;
  nlohmann::json scalars = nlohmann::json::object();
  std::vector<CheckResult> checks;
  std::string nlslab_version;
  std::string fftw_version;
  double timing_ms = 0.0;

  bool all_checks_pass() const;
};

nlohmann::json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);

// '.' decimal separator, '\n' line endings, header row naming every
// column; doubles are written with round-trip precision.
void write_csv(const Table& table, const std::string& path);
Table read_csv(const std::string& path);

void write_json(const RunReport& report, const std::string& path);
RunReport read_json_report(const std::string& path);

// Renders a report (tables elided to their shapes) as a text summary.
std::string render_report(const RunReport& report);

}  // namespace nlslab

#endif
