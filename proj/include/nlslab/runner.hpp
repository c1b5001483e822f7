#ifndef NLSLAB_RUNNER_HPP
#define NLSLAB_RUNNER_HPP

#include "nlslab/experiment.hpp"
#include "nlslab/report.hpp"

namespace nlslab {

struct RunOptions {
  std::string out_dir;  // empty: no files, report returned only
  std::optional<std::uint64_t> seed_override;
  double resolution_scale = 1.0;  // multiplies n_points, divides dt
  bool quiet = false;
};

// Executes one experiment and (when out_dir is set) persists the JSON
// report and one CSV per table as <out_dir>/<name>_<table>.csv.
RunReport run_experiment(const ExperimentConfig& cfg, const RunOptions& opts);

// Resolves "default" to the built-in config for the subcommand.
RunReport run_experiment_path(const std::string& config_path,
                              ExperimentKind expected_kind,
                              const RunOptions& opts);

void persist_report(const RunReport& report, const ExperimentConfig& cfg,
                    const std::string& out_dir);

std::string nlslab_version();

}  // namespace nlslab

#endif
