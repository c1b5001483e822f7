#include <doctest.h>

#include <cmath>

#include "nlslab/globalize.hpp"
#include "nlslab/initial_data.hpp"

using namespace nlslab;

namespace {

const GridSpec kGrid(1024, 60.0);

SpaceTimeField free_flow_traj(const Field& f, double t1, double t2,
                              std::size_t m) {
  std::vector<double> times(m);
  std::vector<Field> slices;
  slices.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    times[i] = t1 + (t2 - t1) * static_cast<double>(i) /
                        static_cast<double>(m - 1);
    slices.push_back(free_propagate(f, times[i]));
  }
  return SpaceTimeField(std::move(times), std::move(slices));
}

}  // namespace

TEST_SUITE_BEGIN("globalize");

TEST_CASE("run_scheme: zero data") {
  SolverConfig cfg;
  cfg.dt = 1e-3;
  Field zero(kGrid);
  // ||phi||_2 = 0 gives c0 = 1 and trivially satisfied budgets
  SchemeResult res = run_scheme(zero, 2.9, 0.2, 4.0, 4.0, 1.0, cfg);
  CHECK(res.status != SchemeStatus::budget_violation);
  for (const auto& r : res.records) {
    CHECK(r.phi_k_l2 == 0.0);
    CHECK(r.budgets_ok());
  }
  for (std::size_t i = 0; i < res.u.num_slices(); ++i)
    CHECK(lp_norm(res.u.slice(i), 2.0) == 0.0);
}

TEST_CASE("run_scheme: pure L2 data reduces to the direct solve") {
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.store_slices = 0;
  Field phi = gaussian_data(kGrid, 1.0);
  // N^alpha far above ||phi||_2: psi_N = 0, w == 0, u = v
  SchemeResult res = run_scheme(phi, 2.9, 0.5, 64.0, 2.0, 1.0, cfg);
  CHECK(lp_norm(res.pair.psi_n, 2.9) == 0.0);
  for (const auto& r : res.records) {
    CHECK(r.w_y_seminorm == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.psi_lp0 == 0.0);
  }
  SpaceTimeField direct = solve_nls(phi, 0.0, res.u.t_end(), cfg);
  CHECK(uniqueness_overlap(res.u, direct).sup_rel_l2 < 1e-6);
}

TEST_CASE("run_scheme: power-law data vs direct solve, with audits") {
  SolverConfig cfg;
  cfg.dt = 1e-4;
  cfg.store_slices = 0;
  const double p0 = 2.9;
  const double alpha = theta_from_target(2.1, p0).alpha;
  Field phi = power_law_data(kGrid, 0.49, 1.0);

  for (double n : {4.0, 8.0}) {
    SchemeResult res = run_scheme(phi, p0, alpha, n, 4.0, 1.0, cfg);
    CHECK(res.status != SchemeStatus::budget_violation);
    CHECK(res.escalations == 0);
    CHECK(res.slabs_run >= 1);

    // psi free flow: L2 norm is k-independent (unitarity)
    for (const auto& r : res.records) {
      CHECK(r.psi_l2 == doctest::Approx(res.records.front().psi_l2)
                            .epsilon(1e-12));
    }

    GrowthAudit audit = l2_growth_audit(res.records, res.plan);
    CHECK(audit.max_phi_ratio <= 2.0);
    CHECK(audit.within_budget);

    SpaceTimeField direct =
        solve_nls(res.pair.phi_n + res.pair.psi_n, 0.0, res.u.t_end(), cfg);
    CHECK(uniqueness_overlap(res.u, direct).sup_rel_l2 < 1e-4);
  }
}

TEST_CASE("l2_growth_audit on a single slab is <= 1 by construction") {
  SolverConfig cfg;
  cfg.dt = 1e-3;
  Field phi = gaussian_data(kGrid, 1.0);
  SchemeOptions opts;
  opts.t_cap = 1e-9;  // forces exactly one slab
  SchemeResult res = run_scheme(phi, 2.9, 0.3, 4.0, 4.0, 1.0, cfg, opts);
  CHECK(res.slabs_run == 1);
  GrowthAudit audit = l2_growth_audit(res.records, res.plan);
  CHECK(audit.max_phi_ratio <= 1.0 + 1e-12);
  // psi_N = 0 here, so the Duhamel sum vanishes
  CHECK(audit.duhamel_sum == 0.0);
}

TEST_CASE("uniqueness_overlap metric") {
  Field f = gaussian_data(kGrid, 1.0);
  SpaceTimeField u1 = free_flow_traj(f, 0.0, 1.0, 17);
  CHECK(uniqueness_overlap(u1, u1).sup_rel_l2 == 0.0);

  // a relative perturbation of size eps reads back as about eps
  const double eps = 1e-3;
  Field bump = Complex(eps, 0.0) * f;
  SpaceTimeField u2 = u1.map_slices(
      [&](double t, const Field& s) { return s + free_propagate(bump, t); });
  const double d = uniqueness_overlap(u1, u2).sup_rel_l2;
  CHECK(d == doctest::Approx(eps).epsilon(0.05));

  // disjoint intervals rejected
  SpaceTimeField late = free_flow_traj(f, 2.0, 3.0, 9);
  CHECK_THROWS_AS(uniqueness_overlap(u1, late), Error);
}

TEST_CASE("persistence_report basics") {
  Field f = gaussian_data(kGrid, 1.0);
  SpaceTimeField lin = free_flow_traj(f, 0.0, 1.5, 21);
  auto pts = persistence_report(lin, 2.1);
  const double base = lp_norm(f, 2.1);
  for (const auto& pt : pts) {
    CHECK(pt.twisted_lp == doctest::Approx(base).epsilon(1e-10));
    CHECK(pt.duhamel_lp < 1e-10);
  }
  CHECK(pts.front().control == 0.0);
  CHECK(pts.back().control > 0.0);
  CHECK_THROWS_AS(persistence_report(lin, 4.0), Error);
  CHECK_THROWS_AS(persistence_report(lin, 1.5), Error);

  // p = 2 on a nonlinear solve: constant curve by mass conservation
  SolverConfig cfg;
  cfg.dt = 1e-3;
  SpaceTimeField u = solve_nls(f, 0.0, 0.5, cfg);
  auto pts2 = persistence_report(u, 2.0);
  for (const auto& pt : pts2)
    CHECK(pt.twisted_lp == doctest::Approx(pts2.front().twisted_lp)
                               .epsilon(1e-9));
}

TEST_CASE("strichartz_ratio contracts") {
  std::vector<Field> family;
  for (std::uint64_t s = 0; s < 5; ++s)
    family.push_back(random_smooth_data(kGrid, 400 + s));

  StrichartzReport rep = strichartz_ratio(
      family, 2.0, 6.0, 6.0, StrichartzFlavor::fourier_lp, 1.0, 65);
  CHECK(rep.max_ratio >= rep.min_ratio);
  CHECK(rep.min_ratio > 0.0);
  CHECK(std::isfinite(rep.max_ratio));

  // homogeneity: scaling the field leaves the ratio unchanged
  std::vector<Field> doubled{Complex(2.0, 0.0) * family[0]};
  std::vector<Field> single{family[0]};
  StrichartzReport r1 = strichartz_ratio(
      single, 2.0, 6.0, 6.0, StrichartzFlavor::fourier_lp, 1.0, 65);
  StrichartzReport r2 = strichartz_ratio(
      doubled, 2.0, 6.0, 6.0, StrichartzFlavor::fourier_lp, 1.0, 65);
  CHECK(r1.max_ratio == doctest::Approx(r2.max_ratio).epsilon(1e-12));

  // exponent contracts enforced
  CHECK_THROWS_AS(strichartz_ratio(family, 3.0, 4.0, 6.0,
                                   StrichartzFlavor::fourier_lp),
                  Error);  // (3,6) outside the open window
  CHECK_THROWS_AS(strichartz_ratio(family, 2.0, 5.0, 6.0,
                                   StrichartzFlavor::fourier_lp),
                  Error);  // q != Q_p(r)
  // kato flavor: gamma = 8p/(3p-4), sigma = 4, rho = p' for p = 2.1
  const double p = 2.1;
  const double rho = p / (p - 1.0);
  const double gamma = 8.0 * p / (3.0 * p - 4.0);
  StrichartzReport kato = strichartz_ratio(
      family, rho, gamma, 4.0, StrichartzFlavor::kato_lp, 1.0, 65);
  CHECK(kato.max_ratio > 0.0);
  CHECK_THROWS_AS(strichartz_ratio(family, rho, gamma + 1.0, 4.0,
                                   StrichartzFlavor::kato_lp),
                  Error);
}

TEST_SUITE_END();
