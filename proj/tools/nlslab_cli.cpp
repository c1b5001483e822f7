// nlslab command line: experiment runner over the shared-library C API.
//
// Subcommands: propagate, split, evolve, globalize, verify, report.
// Exit codes: 0 success, 1 check failure, 2 config error, 3 numerical
// abort (blow-up or non-contraction).

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "nlslab/nlslab.h"

namespace {

struct CommonFlags {
  std::string config = "default";
  std::string out;
  long long seed = -1;
  double resolution_scale = 1.0;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config,
                  "JSON experiment config path, or 'default'");
  cmd->add_option("--out", flags.out,
                  "output directory for CSV/JSON artifacts "
                  "(default: $NLSLAB_OUT, else none)");
  cmd->add_option("--seed", flags.seed, "override the config seed");
  cmd->add_option("--resolution-scale", flags.resolution_scale,
                  "multiply n_points and divide dt by this factor");
  cmd->add_flag("--quiet", flags.quiet, "suppress progress output");
}

int run_kind(const char* kind, const CommonFlags& flags) {
  std::string out_dir = flags.out;
  if (out_dir.empty()) {
    if (const char* env = std::getenv("NLSLAB_OUT")) out_dir = env;
  }
  const int rc = nls_run_experiment(kind, flags.config.c_str(),
                                    out_dir.empty() ? nullptr : out_dir.c_str(),
                                    flags.seed, flags.resolution_scale,
                                    flags.quiet ? 1 : 0);
  if (rc == 2 || rc == 3) {
    std::fprintf(stderr, "error: %s\n", nls_last_error());
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlslab: numerical experiments for cubic NLS with slowly "
               "decaying data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nls_version()));

  CommonFlags propagate_flags, split_flags, evolve_flags, globalize_flags,
      verify_flags;
  auto* propagate =
      app.add_subcommand("propagate", "linear-flow experiments");
  add_common(propagate, propagate_flags);
  auto* split =
      app.add_subcommand("split", "data-decomposition sweeps over N");
  add_common(split, split_flags);
  auto* evolve =
      app.add_subcommand("evolve", "single NLS / difference-equation solves");
  add_common(evolve, evolve_flags);
  auto* globalize = app.add_subcommand(
      "globalize", "interval-by-interval two-component scheme with audits");
  add_common(globalize, globalize_flags);
  auto* verify =
      app.add_subcommand("verify", "run the acceptance suite");
  add_common(verify, verify_flags);

  std::string report_path;
  auto* report = app.add_subcommand(
      "report", "render a persisted JSON report as a summary table");
  report->add_option("--config", report_path, "path to a *_report.json file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Unknown subcommands/flags are configuration errors (exit 2), but
    // keep CLI11's conventional 0 for --help/--version.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (propagate->parsed()) return run_kind("propagate", propagate_flags);
  if (split->parsed()) return run_kind("split", split_flags);
  if (evolve->parsed()) return run_kind("evolve", evolve_flags);
  if (globalize->parsed()) return run_kind("globalize", globalize_flags);
  if (verify->parsed()) return run_kind("verify", verify_flags);
  if (report->parsed()) {
    char* text = nullptr;
    if (nls_render_report_file(report_path.c_str(), &text) != NLS_OK) {
      std::fprintf(stderr, "error: %s\n", nls_last_error());
      return 2;
    }
    std::fputs(text, stdout);
    nls_free_str(text);
    return 0;
  }
  return 2;
}
