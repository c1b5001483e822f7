#ifndef NLSLAB_GLOBALIZE_HPP
#define NLSLAB_GLOBALIZE_HPP

#include <optional>
#include <string>
#include <vector>

#include "nlslab/decompose.hpp"
#include "nlslab/solver.hpp"

namespace nlslab {

// Interval-by-interval evolution plan:
//   delta_n = (m * 2 * c0 * n^alpha)^-4,
//   n0      = floor(c_small * n^E),  E = (2 p0/(3 p0 - 2)) (2a + 1 - 2a/p0),
//   t_n     = n0 * delta_n  (proportional to n^((-8 p0 a + 4a + 2 p0)/(3 p0 - 2))),
//   globalcond: alpha < p0 / (2 (2 p0 - 1)), the regime where t_n grows
//   with n.
struct GlobalizationPlan {
  double p0 = 0.0;
  double alpha = 0.0;
  double n = 0.0;        // the index N
  double m = 4.0;        // the "sufficiently large" constant M
  double c0 = 1.0;       // C0
  double c_small = 1.0;  // the absolute constant c in n0
  double delta_n = 0.0;
  long long n0 = 0;
  double t_n = 0.0;
  double n0_exponent = 0.0;   // E above
  double t_n_exponent = 0.0;  // (-8 p0 a + 4 a + 2 p0)/(3 p0 - 2)
  bool globalcond = false;
};

GlobalizationPlan make_plan(double p0, double alpha, double n, double m,
                            double c0, double c_small);

// p0 / (2 (2 p0 - 1)); accepts the p0 = 3 endpoint (threshold 3/10).
double globalcond_threshold(double p0);
Rat globalcond_threshold(const Rat& p0);

// Exact-rational plan arithmetic (requires n^alpha rational, e.g. alpha
// with small denominator and n a matching perfect power).
struct PlanExact {
  Rat delta_n;
  Rat n0_exponent;
  Rat t_n_exponent;
  Rat globalcond_threshold;  // p0 / (2 (2 p0 - 1))
  bool globalcond = false;
};
PlanExact make_plan_exact(const Rat& p0, const Rat& alpha, const Rat& n,
                          const Rat& m, const Rat& c0);

// Per-interval monitor readings of the two-component scheme.
struct SlabRecord {
  int k = 0;                     // 1-based slab index
  double t0 = 0.0, t1 = 0.0;     // I_k = [(k-1) delta, k delta]
  double phi_k_l2 = 0.0;         // ||phi^(k)||_2
  double w_y_seminorm = 0.0;     // ||w^(k)|| in Y~^{p0}_{p0'}(I_k)
  double duhamel_l2 = 0.0;       // L2 size of the Duhamel increment
  double psi_l2 = 0.0;           // ||psi^(k)||_2 (k-independent: unitarity)
  double psi_lp0 = 0.0;          // ||psi^(k)||_p0 (reported, not invariant)
  double phi_budget = 0.0;       // 2 c0 N^alpha
  double w_budget = 0.0;         // N^(-1 + 4 alpha / p0)
  bool phi_budget_ok = false;
  bool w_budget_ok = false;
  bool budgets_ok() const { return phi_budget_ok && w_budget_ok; }
};

enum class SchemeStatus { completed, budget_violation, capped };

struct SchemeResult {
  SchemeStatus status = SchemeStatus::completed;
  SpaceTimeField u;                 // concatenated v + w trajectory
  std::vector<SlabRecord> records;
  DecompositionPair pair;
  GlobalizationPlan plan;           // plan actually used (after escalation)
  int escalations = 0;              // times M was doubled
  int slabs_run = 0;
  std::string note;
};

struct SchemeOptions {
  double t_cap = 1.0;          // physical-time cap on n0 * delta_n
  int max_escalations = 2;     // M doubling on budget violation
  double decompose_scale = 1.0;
  // c0 policy: when unset, c0 = max(1, ||phi_N||_2 / N^alpha) from the
  // realized pair.
  std::optional<double> c0_override;
};

// Step 1-2 driver: decompose phi at index N, then for k = 1..n0 solve the
// L2 sub-problem for v^(k) on I_k, free-flow psi to psi^(k), solve the
// difference equation for w^(k), fold the Duhamel increment into
// phi^(k+1), and record budgets. A budget violation halts the scheme with
// a report (data, not a crash); blow-up propagates as an error.
SchemeResult run_scheme(const Field& phi, double p0, double alpha, double n,
                        double m, double c_small, const SolverConfig& cfg,
                        const SchemeOptions& opts = {});

struct GrowthAudit {
  double max_phi_ratio = 0.0;     // max_k ||phi^(k)||_2 / (c0 N^alpha)
  double duhamel_sum = 0.0;       // cumulative L2 Duhamel increments
  double duhamel_budget = 0.0;    // c0 N^alpha (the three-thirds total)
  bool within_budget = false;
};
GrowthAudit l2_growth_audit(const std::vector<SlabRecord>& records,
                            const GlobalizationPlan& plan);

struct OverlapDistance {
  double sup_rel_l2 = 0.0;   // sup over common slices of relative L2 gap
  double l4l6 = 0.0;         // L^4_t L^6_x norm of the difference
  double overlap_t0 = 0.0;
  double overlap_t1 = 0.0;
};
OverlapDistance uniqueness_overlap(const SpaceTimeField& u1,
                                   const SpaceTimeField& u2);

struct PersistencePoint {
  double t = 0.0;
  double twisted_lp = 0.0;    // ||U(-t) u(t)||_p
  double untwisted_lp = 0.0;  // ||u(t)||_p
  double duhamel_lp = 0.0;    // ||Integral_0^t U(-s)|u|^2 u ds||_p
  double control = 0.0;       // t^(1/(6p)) ||u||^3 in L^{24/5}([0,t]; L^4)
};
// Requires p in [2, 4).
std::vector<PersistencePoint> persistence_report(const SpaceTimeField& u,
                                                 double p);

enum class StrichartzFlavor { fourier_lp, kato_lp };

struct StrichartzReport {
  std::vector<double> ratios;    // one per ensemble member
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  double q = 0.0;
  double denominator_p = 0.0;
};
// For each field: mixed_norm(U(t) phi; q, r on [0, horizon]) divided by
// ||phi^||_p (fourier_lp) or ||phi||_p (kato_lp). The max ratio is an
// empirical lower bound for the constant in the estimate.
// fourier_lp requires admissibility_window(p, r) and q = Q_p(r);
// kato_lp requires 2/q + 1/r = 1/p with 1/q + 1/r < 1/2.
StrichartzReport strichartz_ratio(const std::vector<Field>& family, double p,
                                  double q, double r, StrichartzFlavor flavor,
                                  double horizon = 1.0,
                                  std::size_t time_slices = 129);

}  // namespace nlslab

#endif
