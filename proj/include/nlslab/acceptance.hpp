#ifndef NLSLAB_ACCEPTANCE_HPP
#define NLSLAB_ACCEPTANCE_HPP

#include <vector>

#include "nlslab/report.hpp"

namespace nlslab {

// One acceptance criterion: a named group of checks at pinned tolerances.
struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

// Runs criterion `id` (1..9), or all of them for id = 0. The scale factor
// multiplies grid sizes and divides time steps coherently.
std::vector<CriterionResult> run_acceptance(int id = 0,
                                            double resolution_scale = 1.0);

// Prints one pass/fail line per criterion; returns the failure count.
int print_acceptance(const std::vector<CriterionResult>& results);

}  // namespace nlslab

#endif
