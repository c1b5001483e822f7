#include "nlslab/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nlslab/errors.hpp"

namespace nlslab {

namespace {

std::string format_double(double v) {
  // Shortest representation that round-trips.
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  require(ec == std::errc(), ErrorCode::internal, "format_double failed");
  return std::string(buf, ptr);
}

}  // namespace

bool RunReport::all_checks_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json report_to_json(const RunReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["kind"] = report.kind;
  j["config"] = report.config_echo;
  j["scalars"] = report.scalars;
  auto tables = nlohmann::json::array();
  for (const auto& t : report.tables) {
    nlohmann::json tj;
    tj["name"] = t.name;
    tj["headers"] = t.headers;
    tj["rows"] = t.rows;
    tables.push_back(tj);
  }
  j["tables"] = tables;
  auto checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"measured", c.measured},
                      {"expected", c.expected}});
  }
  j["checks"] = checks;
  j["versions"] = {{"nlslab", report.nlslab_version},
                   {"fftw", report.fftw_version}};
  j["timing_ms"] = report.timing_ms;
  return j;
}

RunReport report_from_json(const nlohmann::json& j) {
  RunReport r;
  r.name = j.at("name").get<std::string>();
  r.kind = j.at("kind").get<std::string>();
  r.config_echo = j.at("config");
  r.scalars = j.at("scalars");
  for (const auto& tj : j.at("tables")) {
    Table t;
    t.name = tj.at("name").get<std::string>();
    t.headers = tj.at("headers").get<std::vector<std::string>>();
    t.rows = tj.at("rows").get<std::vector<std::vector<double>>>();
    r.tables.push_back(std::move(t));
  }
  for (const auto& cj : j.at("checks")) {
    CheckResult c;
    c.name = cj.at("name").get<std::string>();
    c.pass = cj.at("pass").get<bool>();
    c.measured = cj.at("measured").get<double>();
    c.expected = cj.at("expected").get<std::string>();
    r.checks.push_back(std::move(c));
  }
  r.nlslab_version = j.at("versions").at("nlslab").get<std::string>();
  r.fftw_version = j.at("versions").at("fftw").get<std::string>();
  r.timing_ms = j.at("timing_ms").get<double>();
  return r;
}

void write_csv(const Table& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::io, "write_csv: cannot open " + path);
  for (std::size_t i = 0; i < table.headers.size(); ++i) {
    if (i) out << ',';
    out << table.headers[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    require(row.size() == table.headers.size(), ErrorCode::internal,
            "write_csv: ragged row in table " + table.name);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  require(out.good(), ErrorCode::io, "write_csv: write failed for " + path);
}

Table read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::io, "read_csv: cannot open " + path);
  Table t;
  t.name = path;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first) {
      t.headers = cells;
      first = false;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(std::stod(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_json(const RunReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::io, "write_json: cannot open " + path);
  out << report_to_json(report).dump(2) << '\n';
  require(out.good(), ErrorCode::io, "write_json: write failed for " + path);
}

RunReport read_json_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::io, "read_json_report: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::io, "read_json_report: parse error in " + path + ": " +
                            e.what());
  }
  return report_from_json(j);
}

std::string render_report(const RunReport& report) {
  std::ostringstream out;
  out << "report: " << report.name << " (kind: " << report.kind << ")\n";
  out << "versions: nlslab " << report.nlslab_version << ", fftw "
      << report.fftw_version << "\n";
  out << "timing: " << report.timing_ms << " ms\n";
  if (!report.scalars.empty()) {
    out << "scalars:\n";
    for (auto it = report.scalars.begin(); it != report.scalars.end(); ++it)
      out << "  " << it.key() << " = " << it.value().dump() << "\n";
  }
  for (const auto& t : report.tables) {
    out << "table " << t.name << ": " << t.rows.size() << " rows x "
        << t.headers.size() << " cols (";
    for (std::size_t i = 0; i < t.headers.size(); ++i) {
      if (i) out << ", ";
      out << t.headers[i];
    }
    out << ")\n";
  }
  if (!report.checks.empty()) {
    out << "checks:\n";
    for (const auto& c : report.checks) {
      out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name
          << ": measured " << c.measured << " expected " << c.expected
          << "\n";
    }
  }
  return out.str();
}

}  // namespace nlslab
