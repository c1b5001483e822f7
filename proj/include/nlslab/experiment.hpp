#ifndef NLSLAB_EXPERIMENT_HPP
#define NLSLAB_EXPERIMENT_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "nlslab/field.hpp"
#include "nlslab/solver.hpp"

namespace nlslab {

enum class ExperimentKind { propagate, split, evolve, globalize, verify, report };

ExperimentKind parse_kind(const std::string& s);
std::string kind_name(ExperimentKind k);

// Validated experiment description. Kind-specific parameters stay in
// `raw` and are pulled (with schema checks and path-qualified errors) by
// the runner; the blocks shared by every kind are typed here.
struct ExperimentConfig {
  std::string name;
  ExperimentKind kind = ExperimentKind::propagate;
  nlohmann::json raw;

  std::size_t n_points = 4096;
  double half_width = 100.0;
  SolverConfig solver;
  double domain_tolerance = 1e-6;
  std::uint64_t seed = 1;
  bool write_csv_outputs = true;
  bool write_json_report = true;

  GridSpec grid() const { return GridSpec(n_points, half_width); }
};

// Parses and validates; errors carry the offending key path, e.g.
// "config error at solver.dt: expected number > 0".
ExperimentConfig parse_experiment(const nlohmann::json& j);
ExperimentConfig load_experiment(const std::string& path);

// Built-in default config for a subcommand ("--config default").
nlohmann::json default_config(ExperimentKind kind);

// Builds the configured initial data on the configured grid.
Field make_initial_data(const ExperimentConfig& cfg);

// Schema-checked JSON accessors (shared with the runner). All throw
// ErrorCode::config with the dotted path on violation.
namespace cfgv {
double num(const nlohmann::json& j, const std::string& path, double lo,
           double hi);
double num_or(const nlohmann::json& j, const std::string& path, double fallback,
              double lo, double hi);
long long integer(const nlohmann::json& j, const std::string& path,
                  long long lo, long long hi);
long long integer_or(const nlohmann::json& j, const std::string& path,
                     long long fallback, long long lo, long long hi);
std::string str(const nlohmann::json& j, const std::string& path);
std::string str_or(const nlohmann::json& j, const std::string& path,
                   const std::string& fallback);
bool flag_or(const nlohmann::json& j, const std::string& path, bool fallback);
const nlohmann::json* find(const nlohmann::json& j, const std::string& path);
std::vector<double> num_list(const nlohmann::json& j, const std::string& path);
}  // namespace cfgv

}  // namespace nlslab

#endif
