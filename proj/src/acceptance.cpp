#include "nlslab/acceptance.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "nlslab/fit.hpp"
#include "nlslab/globalize.hpp"
#include "nlslab/initial_data.hpp"
#include "nlslab/runner.hpp"

namespace nlslab {

namespace {

// Desk-scale defaults; resolution_scale multiplies n and divides dt.
struct Desk {
  std::size_t n = 4096;
  double half_width = 100.0;
  double dt = 1e-4;
};

Desk desk_at(double scale) {
  Desk d;
  if (scale != 1.0) {
    require_arg(scale > 0.0, "resolution scale must be positive");
    std::size_t n = 4;
    while (static_cast<double>(n) < 4096.0 * scale - 0.5) n <<= 1;
    d.n = n;
    d.dt = 1e-4 / scale;
  }
  return d;
}

CheckResult check(const std::string& name, bool pass, double measured,
                  const std::string& expected) {
  return CheckResult{name, pass, measured, expected};
}

CheckResult check_below(const std::string& name, double measured,
                        double bound) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "< %g", bound);
  return check(name, measured < bound, measured, buf);
}

CheckResult check_in(const std::string& name, double measured, double lo,
                     double hi) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "in [%g, %g]", lo, hi);
  return check(name, measured >= lo && measured <= hi, measured, buf);
}

double rel_l2_diff(const Field& a, const Field& b) {
  const double ref = std::max(lp_norm(a, 2.0), 1e-300);
  return lp_norm(a - b, 2.0) / ref;
}

struct ScalarRng {  // deterministic scalars for test parameters
  std::uint64_t state;
  explicit ScalarRng(std::uint64_t seed) : state(seed) {}
  double uniform(double lo, double hi) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    const double u = (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
};

// ---- criterion 1: exponent ledger (exact rational) ---------------------

CriterionResult criterion_exponents(double) {
  CriterionResult out{1, "exponent ledger (exact rational)", {}};
  auto exact = [&](const std::string& name, const Rat& got, const Rat& want) {
    const double diff = std::abs(to_double(got - want));
    out.checks.push_back(check(name, got == want, diff, "== 0 exactly"));
  };
  exact("Q_2(6) = 6", q_exponent(Rat(2), Rat(6)), Rat(6));
  exact("Q_3(6) = 4", q_exponent(Rat(3), Rat(6)), Rat(4));
  exact("Q_3(4) = 24/5", q_exponent(Rat(3), Rat(4)), Rat(24, 5));
  exact("Q_2(4) = 8", q_exponent(Rat(2), Rat(4)), Rat(8));
  exact("globalcond threshold at p0 = 3 is 3/10",
        globalcond_threshold(Rat(3)), Rat(3, 10));
  ThetaParamsExact tp = theta_from_target(Rat(13, 6), Rat(3));
  exact("theta for p = 13/6, p0 = 3 is 10/13", tp.theta, Rat(10, 13));
  exact("alpha at the p0 = 3 endpoint equals 3/10", tp.alpha, Rat(3, 10));
  // The endpoint index solves alpha = p0/(2(2p0-1)) exactly.
  exact("alpha matches the globalcond boundary", tp.alpha,
        globalcond_threshold(Rat(3)));
  // Forward direction: theta_0 from the boundary value of alpha, then
  // the interpolated index it produces.
  {
    const Rat p0(3);
    const Rat alpha0 = globalcond_threshold(p0);
    const Rat theta0 = Rat(1) / (Rat(1) + alpha0);
    const Rat p_theta0 =
        Rat(1) / ((Rat(1) - theta0) / p0 + theta0 / Rat(2));
    exact("theta-solve at p0 = 3 gives p_theta0 = 13/6", p_theta0,
          Rat(13, 6));
  }
  return out;
}

// ---- criterion 2: spectral core ----------------------------------------

CriterionResult criterion_spectral(double scale) {
  const Desk d = desk_at(scale);
  const GridSpec grid(d.n, d.half_width);
  CriterionResult out{2, "spectral core", {}};

  double plancherel = 0.0, unitarity = 0.0, group = 0.0, reversibility = 0.0;
  ScalarRng rng(2024);
  for (int i = 0; i < 100; ++i) {
    Field f = random_smooth_data(grid, 1000 + static_cast<std::uint64_t>(i));
    const double l2 = lp_norm(f, 2.0);
    plancherel = std::max(
        plancherel, std::abs(l2 - fourier_lp_norm(f, 2.0)) / l2);
    const double t = rng.uniform(-2.0, 2.0);
    const double s = rng.uniform(-2.0, 2.0);
    Field ft = free_propagate(f, t);
    unitarity = std::max(unitarity, std::abs(lp_norm(ft, 2.0) - l2) / l2);
    group = std::max(group, rel_l2_diff(free_propagate(ft, s),
                                        free_propagate(f, s + t)));
    reversibility =
        std::max(reversibility, rel_l2_diff(free_propagate(ft, -t), f));
  }
  out.checks.push_back(check_below("plancherel", plancherel, 1e-10));
  out.checks.push_back(check_below("unitarity", unitarity, 1e-10));
  out.checks.push_back(check_below("group law", group, 1e-10));
  out.checks.push_back(check_below("reversibility", reversibility, 1e-10));

  // Gaussian free flow against the closed-form evolution of exp(-x^2).
  Field g = gaussian_data(grid, 1.0);
  double gauss_err = 0.0;
  for (double t : {0.1, 0.5, 1.0, 2.0}) {
    const Complex denom(1.0, 4.0 * t);
    Field exact = Field::from_function(grid, [&](double x) {
      return std::sqrt(Complex(1.0, 0.0) / denom) * std::exp(-x * x / denom);
    });
    gauss_err =
        std::max(gauss_err, Field::max_abs_diff(free_propagate(g, t), exact));
  }
  out.checks.push_back(
      check_below("gaussian flow vs analytic (max-norm)", gauss_err, 1e-8));
  return out;
}

// ---- criterion 3: solver ------------------------------------------------

CriterionResult criterion_solver(double scale) {
  const Desk d = desk_at(scale);
  const GridSpec grid(d.n, d.half_width);
  CriterionResult out{3, "solver", {}};

  SolverConfig cfg;
  cfg.dt = d.dt;
  cfg.store_slices = 64;
  Field phi = soliton_data(grid);

  auto soliton_error = [&](double dt) {
    SolverConfig c = cfg;
    c.dt = dt;
    SpaceTimeField u = solve_nls(phi, 0.0, 1.0, c);
    Field exact = Field::from_function(grid, [&](double x) {
      return std::sqrt(2.0) / std::cosh(x) * std::exp(Complex(0.0, 1.0));
    });
    double drift = 0.0;
    const double mass0 = lp_norm(u.slice(0), 2.0);
    for (std::size_t i = 0; i < u.num_slices(); ++i)
      drift = std::max(
          drift, std::abs(lp_norm(u.slice(i), 2.0) - mass0) / mass0);
    return std::pair<double, double>(
        Field::max_abs_diff(u.slice(u.num_slices() - 1), exact), drift);
  };

  auto [err_fine, drift] = soliton_error(d.dt);
  auto [err_coarse, drift2] = soliton_error(2.0 * d.dt);
  (void)drift2;
  out.checks.push_back(
      check_below("soliton max-norm error at t=1", err_fine, 1e-6));
  out.checks.push_back(check_below("mass drift", drift, 1e-8));
  out.checks.push_back(
      check_in("dt-halving error ratio", err_coarse / err_fine, 3.5, 4.5));

  // 5-term expansion against the direct cubic difference.
  double g_err = 0.0;
  for (int i = 0; i < 3; ++i) {
    Field v = random_smooth_data(grid, 7000 + static_cast<std::uint64_t>(i));
    Field w = random_smooth_data(grid, 7100 + static_cast<std::uint64_t>(i));
    Field expansion = difference_nonlinearity(v, w);
    std::vector<Complex> s(grid.n_points());
    for (std::size_t j = 0; j < grid.n_points(); ++j) {
      const Complex sum = v[j] + w[j];
      s[j] = std::norm(sum) * sum - std::norm(v[j]) * v[j];
    }
    Field direct(grid, std::move(s));
    double scale_ref = direct.max_abs();
    g_err = std::max(g_err,
                     Field::max_abs_diff(expansion, direct) /
                         std::max(scale_ref, 1e-300));
  }
  out.checks.push_back(
      check_below("5-term G expansion vs direct cubic", g_err, 1e-12));
  return out;
}

// ---- criterion 4: factorization identity --------------------------------

CriterionResult criterion_factorization(double scale) {
  const Desk d = desk_at(scale);
  const GridSpec grid(d.n, d.half_width);
  CriterionResult out{4, "factorization identity", {}};

  auto field_at = [&](std::uint64_t seed) {
    return random_smooth_data(grid, seed, 8.0, 1.5);
  };

  // One least-squares fit of c on one triple, then 20 fresh triples.
  FactorizationCheck base = factorization_check(
      field_at(41), field_at(42), field_at(43), 1.0);
  out.checks.push_back(check_below("residual after fitting on triple A",
                                   base.relative_error, 1e-6));

  ScalarRng rng(4);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double t = rng.uniform(0.5, 2.0);
    const auto s = static_cast<std::uint64_t>(100 + 3 * i);
    worst = std::max(
        worst, factorization_residual(field_at(s), field_at(s + 1),
                                      field_at(s + 2), t, base.fitted_c));
  }
  out.checks.push_back(check_below(
      "reused c on 20 fresh triples, t in [0.5, 2]", worst, 1e-6));
  return out;
}

// ---- criterion 5: decomposition scaling ----------------------------------

CriterionResult criterion_decomposition(double scale) {
  const Desk d = desk_at(scale);
  const GridSpec grid(d.n, d.half_width);
  CriterionResult out{5, "decomposition scaling", {}};

  const double p = 2.1, p0 = 2.9, beta = 0.49;
  const double alpha = theta_from_target(p, p0).alpha;
  Field f = power_law_data(grid, beta, 1.0);

  double resum = 0.0;
  std::vector<double> log_n, log_phi, log_psi;
  for (double n : {2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0}) {
    DecompositionPair pair = d_class_decompose(f, p0, alpha, n);
    resum = std::max(resum, Field::max_abs_diff(pair.phi_n + pair.psi_n, f));
    log_n.push_back(std::log(n));
    log_phi.push_back(std::log(pair.phi_l2));
    log_psi.push_back(std::log(pair.psi_lp0));
  }
  out.checks.push_back(
      check("exact re-summation (bitwise)", resum == 0.0, resum, "== 0"));
  const double phi_slope = linear_fit(log_n, log_phi).slope;
  const double psi_slope = linear_fit(log_n, log_psi).slope;
  out.checks.push_back(check_in("||phi_N||_2 log-log slope", phi_slope,
                                alpha - 0.1 * alpha, alpha + 0.1 * alpha));
  // Attaining -1 needs the whole-line asymptotic regime of the
  // beta = 0.49 profile, which no finite grid reaches; see the ledger.
  out.checks.push_back(
      check_in("||psi_N||_p0 log-log slope", psi_slope, -1.1, -0.9));
  return out;
}

// ---- criterion 6: globalization scheme vs direct solve -------------------

CriterionResult criterion_globalization(double scale) {
  const Desk d = desk_at(scale);
  const GridSpec grid(d.n, d.half_width);
  CriterionResult out{6, "globalization scheme vs direct solve", {}};

  const double p = 2.1, p0 = 2.9;
  const double alpha = theta_from_target(p, p0).alpha;
  Field phi = power_law_data(grid, 0.49, 1.0);

  SolverConfig cfg;
  cfg.dt = d.dt;
  cfg.store_slices = 0;

  double worst_gap = 0.0, worst_ratio = 0.0;
  int worst_escalations = 0;
  bool budgets_ok = true;
  for (double n : {4.0, 8.0, 16.0}) {
    SchemeOptions opts;
    opts.t_cap = 1.0;
    SchemeResult res = run_scheme(phi, p0, alpha, n, 4.0, 1.0, cfg, opts);
    budgets_ok = budgets_ok &&
                 res.status != SchemeStatus::budget_violation;
    worst_escalations = std::max(worst_escalations, res.escalations);

    GrowthAudit audit = l2_growth_audit(res.records, res.plan);
    worst_ratio = std::max(worst_ratio, audit.max_phi_ratio);

    SpaceTimeField direct =
        solve_nls(res.pair.phi_n + res.pair.psi_n, 0.0, res.u.t_end(), cfg);
    worst_gap = std::max(worst_gap,
                         uniqueness_overlap(res.u, direct).sup_rel_l2);
  }
  out.checks.push_back(check_below(
      "scheme vs direct, sup-t relative L2 gap", worst_gap, 1e-4));
  out.checks.push_back(
      check("l2 growth audit ratio <= 2", worst_ratio <= 2.0, worst_ratio,
            "<= 2"));
  out.checks.push_back(check("budgets satisfied within 2 escalations",
                             budgets_ok && worst_escalations <= 2,
                             static_cast<double>(worst_escalations),
                             "<= 2 escalations, no violation"));
  return out;
}

// ---- criterion 7: uniqueness on overlap ----------------------------------

CriterionResult criterion_uniqueness(double scale) {
  const Desk d = desk_at(scale);
  const GridSpec grid(d.n, d.half_width);
  CriterionResult out{7, "uniqueness on the overlap", {}};

  const double p = 2.1, p0 = 2.9;
  const double alpha = theta_from_target(p, p0).alpha;
  Field phi = power_law_data(grid, 0.49, 1.0);

  SolverConfig cfg;
  cfg.dt = d.dt;
  cfg.store_slices = 0;
  SchemeOptions opts;
  opts.t_cap = 1.0;
  SchemeResult run8 = run_scheme(phi, p0, alpha, 8.0, 4.0, 1.0, cfg, opts);
  SchemeResult run16 = run_scheme(phi, p0, alpha, 16.0, 4.0, 1.0, cfg, opts);
  OverlapDistance dist = uniqueness_overlap(run8.u, run16.u);
  out.checks.push_back(check_below(
      "N=8 vs N=16 sup relative L2 on shared horizon", dist.sup_rel_l2,
      1e-4));
  return out;
}

// ---- criterion 8: persistence of the twisted variable --------------------

CriterionResult criterion_persistence(double scale) {
  const Desk d = desk_at(scale);
  const GridSpec grid(d.n, d.half_width);
  CriterionResult out{8, "persistence of the twisted variable", {}};

  const double p = 2.1;
  Field phi = power_law_data(grid, 0.49, 1.0);
  SolverConfig cfg;
  cfg.dt = d.dt;
  cfg.store_slices = 256;
  const double horizon = 2.0;
  SpaceTimeField u = solve_nls(phi, 0.0, horizon, cfg);

  auto pts = persistence_report(u, p);
  const double initial = pts.front().twisted_lp;
  double max_rel = 0.0;
  for (const auto& pt : pts)
    max_rel = std::max(max_rel, std::abs(pt.twisted_lp - initial) / initial);
  out.checks.push_back(check_below(
      "nonlinear twisted L^2.1 drift over the run", max_rel, 0.20));

  Table nonlinear_curve{"persistence_twisted",
                        {"t", "twisted_lp", "untwisted_lp"},
                        {}};
  for (const auto& pt : pts)
    nonlinear_curve.rows.push_back({pt.t, pt.twisted_lp, pt.untwisted_lp});

  Table free_curve{"persistence_free", {"t", "twisted_lp"}, {}};
  double free_dev = 0.0;
  for (std::size_t i = 0; i < u.num_slices(); ++i) {
    Field lin = free_propagate(phi, u.time(i));
    Field v = free_propagate(lin, -u.time(i));
    const double norm = lp_norm(v, p);
    free_curve.rows.push_back({u.time(i), norm});
    free_dev = std::max(
        free_dev, std::abs(norm - lp_norm(phi, p)) / lp_norm(phi, p));
  }
  out.checks.push_back(check_below(
      "free flow twisted curve constant (machine precision)", free_dev,
      1e-12));

  // Both curves go to CSV when an output directory is configured.
  if (const char* dir = std::getenv("NLSLAB_OUT"); dir && *dir) {
    write_csv(nonlinear_curve,
              std::string(dir) + "/acceptance_persistence_twisted.csv");
    write_csv(free_curve,
              std::string(dir) + "/acceptance_persistence_free.csv");
  }
  return out;
}

// ---- criterion 9: strichartz ratios --------------------------------------

CriterionResult criterion_strichartz(double scale) {
  const Desk d = desk_at(scale);
  CriterionResult out{9, "strichartz ratios", {}};

  auto ensemble_spread = [&](std::size_t n_points) {
    const GridSpec grid(n_points, d.half_width);
    std::vector<Field> family;
    family.reserve(100);
    for (int i = 0; i < 100; ++i)
      family.push_back(
          random_smooth_data(grid, 9000 + static_cast<std::uint64_t>(i)));
    StrichartzReport rep = strichartz_ratio(
        family, 2.0, 6.0, 6.0, StrichartzFlavor::fourier_lp, 1.0);
    return rep.max_ratio / rep.min_ratio;
  };
  const double spread_base = ensemble_spread(d.n);
  const double spread_fine = ensemble_spread(d.n * 2);
  out.checks.push_back(check(
      "ensemble max/min ratio finite", std::isfinite(spread_base) &&
                                           spread_base > 0.0,
      spread_base, "finite"));
  const double change = std::abs(spread_fine / spread_base - 1.0);
  out.checks.push_back(check_below(
      "max/min ratio change under 2x refinement", change, 0.10));

  // Dilation sweep phi_lambda(x) = phi(lambda x) for the (2; 6,6) pair:
  // scale-invariant on the line, so the finite-grid variation is the
  // measured quantity. Narrow base profile keeps the [0,1] window close
  // to the whole-time norm across the sweep.
  const GridSpec dgrid(16384, 50.0);
  const double base_width = 0.25;
  std::vector<double> ratios;
  for (double lambda : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    Field phi = Field::from_function(dgrid, [&](double x) {
      const double y = lambda * x / base_width;
      return Complex(std::exp(-y * y), 0.0);
    });
    StrichartzReport rep = strichartz_ratio(
        {phi}, 2.0, 6.0, 6.0, StrichartzFlavor::fourier_lp, 1.0, 257);
    ratios.push_back(rep.max_ratio);
  }
  double lo = ratios.front(), hi = ratios.front();
  for (double r : ratios) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  out.checks.push_back(
      check_below("dilation sweep ratio variation", hi / lo - 1.0, 0.25));
  return out;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(int id, double resolution_scale) {
  std::vector<CriterionResult> out;
  auto want = [&](int k) { return id == 0 || id == k; };
  if (want(1)) out.push_back(criterion_exponents(resolution_scale));
  if (want(2)) out.push_back(criterion_spectral(resolution_scale));
  if (want(3)) out.push_back(criterion_solver(resolution_scale));
  if (want(4)) out.push_back(criterion_factorization(resolution_scale));
  if (want(5)) out.push_back(criterion_decomposition(resolution_scale));
  if (want(6)) out.push_back(criterion_globalization(resolution_scale));
  if (want(7)) out.push_back(criterion_uniqueness(resolution_scale));
  if (want(8)) out.push_back(criterion_persistence(resolution_scale));
  if (want(9)) out.push_back(criterion_strichartz(resolution_scale));
  require_arg(!out.empty(), "run_acceptance: criterion id must be 0..9");
  return out;
}

int print_acceptance(const std::vector<CriterionResult>& results) {
  int failures = 0;
  for (const auto& r : results) {
    const bool pass = r.pass();
    if (!pass) ++failures;
    // Worst sub-check for the one-line summary.
    const CheckResult* worst = nullptr;
    for (const auto& c : r.checks)
      if (!c.pass) { worst = &c; break; }
    std::printf("[%s] criterion %d: %s", pass ? "PASS" : "FAIL", r.id,
                r.title.c_str());
    if (worst) {
      std::printf(" -- %s: measured %.6g, expected %s", worst->name.c_str(),
                  worst->measured, worst->expected.c_str());
    }
    std::printf("\n");
    for (const auto& c : r.checks) {
      std::printf("    [%s] %s: measured %.6g (expected %s)\n",
                  c.pass ? "ok" : "FAIL", c.name.c_str(), c.measured,
                  c.expected.c_str());
    }
  }
  std::fflush(stdout);
  return failures;
}

}  // namespace nlslab
