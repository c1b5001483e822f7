#include "nlslab/globalize.hpp"

#include <algorithm>
#include <cmath>

namespace nlslab {

double globalcond_threshold(double p0) {
  require_arg(p0 >= 2.0 && p0 <= 3.0, "globalcond_threshold: p0 in [2,3]");
  return p0 / (2.0 * (2.0 * p0 - 1.0));
}

Rat globalcond_threshold(const Rat& p0) {
  require_arg(p0 >= Rat(2) && p0 <= Rat(3), "globalcond_threshold: p0 in [2,3]");
  return p0 / (Rat(2) * (Rat(2) * p0 - Rat(1)));
}

namespace {

double n0_exponent_of(double p0, double alpha) {
  return (2.0 * p0 / (3.0 * p0 - 2.0)) *
         (2.0 * alpha + 1.0 - 2.0 * alpha / p0);
}

double t_n_exponent_of(double p0, double alpha) {
  return (-8.0 * p0 * alpha + 4.0 * alpha + 2.0 * p0) / (3.0 * p0 - 2.0);
}

}  // namespace

GlobalizationPlan make_plan(double p0, double alpha, double n, double m,
                            double c0, double c_small) {
  require_arg(p0 >= 2.0 && p0 < 3.0, "make_plan: p0 in [2,3)");
  require_arg(alpha > 0.0, "make_plan: alpha > 0");
  require_arg(n > 1.0, "make_plan: n > 1");
  require_arg(m >= 1.0, "make_plan: m >= 1");
  require_arg(c0 > 0.0, "make_plan: c0 > 0");
  require_arg(c_small > 0.0, "make_plan: c_small > 0");

  GlobalizationPlan plan;
  plan.p0 = p0;
  plan.alpha = alpha;
  plan.n = n;
  plan.m = m;
  plan.c0 = c0;
  plan.c_small = c_small;
  plan.delta_n = std::pow(m * 2.0 * c0 * std::pow(n, alpha), -4.0);
  plan.n0_exponent = n0_exponent_of(p0, alpha);
  plan.t_n_exponent = t_n_exponent_of(p0, alpha);
  const double n0_real = c_small * std::pow(n, plan.n0_exponent);
  require_arg(n0_real < 9.0e18, "make_plan: n0 overflows");
  plan.n0 = static_cast<long long>(std::floor(n0_real));
  plan.t_n = static_cast<double>(plan.n0) * plan.delta_n;
  plan.globalcond = alpha < globalcond_threshold(p0);
  return plan;
}

PlanExact make_plan_exact(const Rat& p0, const Rat& alpha, const Rat& n,
                          const Rat& m, const Rat& c0) {
  require_arg(p0 >= Rat(2) && p0 < Rat(3), "make_plan_exact: p0 in [2,3)");
  require_arg(n > Rat(1), "make_plan_exact: n > 1");
  PlanExact out;
  const Rat n_alpha = rat_root_pow(n, alpha);
  out.delta_n = rat_pow(m * Rat(2) * c0 * n_alpha, -4);
  out.n0_exponent = (Rat(2) * p0 / (Rat(3) * p0 - Rat(2))) *
                    (Rat(2) * alpha + Rat(1) - Rat(2) * alpha / p0);
  out.t_n_exponent =
      (Rat(-8) * p0 * alpha + Rat(4) * alpha + Rat(2) * p0) /
      (Rat(3) * p0 - Rat(2));
  out.globalcond_threshold = globalcond_threshold(p0);
  out.globalcond = alpha < out.globalcond_threshold;
  return out;
}

// --- Scheme driver ------------------------------------------------------

namespace {

struct SlabOutcome {
  std::vector<SlabRecord> records;
  std::vector<SpaceTimeField> slabs;  // u = v + w per slab
  bool violated = false;
  int slabs_run = 0;
};

// Duhamel increment i * Integral_{I} U(t_end - s) G(v,w) ds on the slab
// mesh (v and w share it by construction).
Field duhamel_increment(const SpaceTimeField& v, const SpaceTimeField& w) {
  const std::size_t m = v.num_slices();
  const std::size_t n = v.grid().n_points();
  std::vector<Complex> acc(n, Complex(0.0, 0.0));
  std::vector<Complex> prev(n), cur(n);
  for (std::size_t i = 0; i < m; ++i) {
    Field g = difference_nonlinearity(v.slice(i), w.slice(i));
    Field gt = free_propagate(g, -v.time(i));
    cur = gt.samples();
    if (i > 0) {
      const double half_h = 0.5 * (v.time(i) - v.time(i - 1));
      for (std::size_t j = 0; j < n; ++j)
        acc[j] += half_h * (cur[j] + prev[j]);
    }
    prev.swap(cur);
  }
  Field integral(v.grid(), std::move(acc));
  return Complex(0.0, 1.0) * free_propagate(integral, v.t_end());
}

SlabOutcome run_slabs(const DecompositionPair& pair,
                      const GlobalizationPlan& plan, const SolverConfig& cfg,
                      const SchemeOptions& opts) {
  SlabOutcome out;
  const double delta = plan.delta_n;
  require_arg(delta > 0.0 && std::isfinite(delta),
              "run_scheme: degenerate slab length");
  require_arg(delta / cfg.dt < 1.0e6,
              "run_scheme: slab too long for the configured dt");

  long long cap_by_time =
      static_cast<long long>(std::floor(opts.t_cap / delta));
  long long n_slabs = std::max<long long>(
      1, std::min<long long>(plan.n0, std::max<long long>(1, cap_by_time)));

  const double phi_budget = 2.0 * plan.c0 * std::pow(plan.n, plan.alpha);
  const double w_budget =
      std::pow(plan.n, -1.0 + 4.0 * plan.alpha / plan.p0);
  const double p0_prime = conjugate_exponent(plan.p0);

  SolverConfig slab_cfg = cfg;
  slab_cfg.store_slices = 0;  // keep every step; slabs are short
  slab_cfg.dt = std::min(cfg.dt, delta / 2.0);

  Field phi_k = pair.phi_n;
  for (long long k = 1; k <= n_slabs; ++k) {
    const double t0 = static_cast<double>(k - 1) * delta;
    const double t1 = static_cast<double>(k) * delta;

    SlabRecord rec;
    rec.k = static_cast<int>(k);
    rec.t0 = t0;
    rec.t1 = t1;
    rec.phi_k_l2 = lp_norm(phi_k, 2.0);
    rec.phi_budget = phi_budget;
    rec.phi_budget_ok = rec.phi_k_l2 <= phi_budget;

    if (!rec.phi_budget_ok) {
      rec.w_budget = w_budget;
      out.records.push_back(rec);
      out.violated = true;
      break;
    }

    SpaceTimeField v = solve_nls(phi_k, t0, t1, slab_cfg);
    Field psi_k = free_propagate(pair.psi_n, t0);
    rec.psi_l2 = lp_norm(psi_k, 2.0);
    rec.psi_lp0 = lp_norm(psi_k, plan.p0);
    SpaceTimeField w = solve_difference(v, psi_k, slab_cfg);

    rec.w_y_seminorm = y_seminorm(w, plan.p0, p0_prime);
    rec.w_budget = w_budget;
    rec.w_budget_ok = rec.w_y_seminorm <= w_budget;

    Field incr = duhamel_increment(v, w);
    rec.duhamel_l2 = lp_norm(incr, 2.0);

    // u = v + w on the slab
    std::vector<Field> u_slices;
    u_slices.reserve(v.num_slices());
    for (std::size_t i = 0; i < v.num_slices(); ++i)
      u_slices.push_back(v.slice(i) + w.slice(i));
    out.slabs.emplace_back(v.times(), std::move(u_slices));

    out.records.push_back(rec);
    out.slabs_run = static_cast<int>(k);
    if (!rec.w_budget_ok) {
      out.violated = true;
      break;
    }

    phi_k = v.slice(v.num_slices() - 1) + incr;
  }
  return out;
}

}  // namespace

SchemeResult run_scheme(const Field& phi, double p0, double alpha, double n,
                        double m, double c_small, const SolverConfig& cfg,
                        const SchemeOptions& opts) {
  DecompositionPair pair =
      d_class_decompose(phi, p0, alpha, n, opts.decompose_scale);
  const double c0 =
      opts.c0_override.value_or(
          std::max(1.0, pair.phi_l2 / std::pow(n, alpha)));

  double m_eff = m;
  int escalations = 0;
  while (true) {
    GlobalizationPlan plan = make_plan(p0, alpha, n, m_eff, c0, c_small);
    SlabOutcome outcome = run_slabs(pair, plan, cfg, opts);
    if (outcome.violated && escalations < opts.max_escalations) {
      ++escalations;
      m_eff *= 2.0;
      continue;
    }
    require(!outcome.slabs.empty(), ErrorCode::internal,
            "run_scheme: no slab completed");
    SpaceTimeField u = outcome.slabs.front();
    for (std::size_t i = 1; i < outcome.slabs.size(); ++i)
      u = u.concat(outcome.slabs[i]);

    SchemeResult result{outcome.violated ? SchemeStatus::budget_violation
                        : (outcome.slabs_run < plan.n0 ? SchemeStatus::capped
                                                       : SchemeStatus::completed),
                        std::move(u),
                        std::move(outcome.records),
                        std::move(pair),
                        plan,
                        escalations,
                        outcome.slabs_run,
                        {}};
    if (result.status == SchemeStatus::budget_violation) {
      result.note = "budget violated at slab " +
                    std::to_string(result.records.back().k) +
                    " after " + std::to_string(escalations) + " escalation(s)";
    } else if (result.status == SchemeStatus::capped) {
      result.note = "t_cap reached before n0 slabs";
    }
    return result;
  }
}

GrowthAudit l2_growth_audit(const std::vector<SlabRecord>& records,
                            const GlobalizationPlan& plan) {
  require_arg(!records.empty(), "l2_growth_audit: no records");
  GrowthAudit audit;
  const double base = plan.c0 * std::pow(plan.n, plan.alpha);
  for (const auto& r : records) {
    audit.max_phi_ratio = std::max(audit.max_phi_ratio, r.phi_k_l2 / base);
    audit.duhamel_sum += r.duhamel_l2;
  }
  audit.duhamel_budget = base;  // three thirds of C0 N^alpha
  audit.within_budget =
      audit.max_phi_ratio <= 2.0 && audit.duhamel_sum <= audit.duhamel_budget;
  return audit;
}

namespace {

// Time interpolation through the twisted variable: linear interpolation
// of U(-t)u(t) and one free flow back. The twisted variable moves on the
// nonlinear time scale only, so this avoids the xi^2 phase error that
// direct interpolation of rough data would pick up.
Field eval_twisted(const SpaceTimeField& u, double t) {
  const std::size_t exact = u.find_time(t, 1e-13);
  if (exact != SpaceTimeField::npos) return u.slice(exact);
  const auto& times = u.times();
  auto it = std::lower_bound(times.begin(), times.end(), t);
  require_arg(it != times.begin() && it != times.end(),
              "eval_twisted: t outside trajectory interval");
  const std::size_t hi = static_cast<std::size_t>(it - times.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - times[lo]) / (times[hi] - times[lo]);
  Field v_lo = free_propagate(u.slice(lo), -times[lo]);
  Field v_hi = free_propagate(u.slice(hi), -times[hi]);
  Field v = Complex(1.0 - w, 0.0) * v_lo + Complex(w, 0.0) * v_hi;
  return free_propagate(v, t);
}

}  // namespace

OverlapDistance uniqueness_overlap(const SpaceTimeField& u1,
                                   const SpaceTimeField& u2) {
  require_arg(u1.grid() == u2.grid(), "uniqueness_overlap: grids differ");
  const double a = std::max(u1.t_begin(), u2.t_begin());
  const double b = std::min(u1.t_end(), u2.t_end());
  require_arg(b > a, "uniqueness_overlap: disjoint time intervals");

  std::vector<double> ts;
  for (std::size_t i = 0; i < u1.num_slices(); ++i) {
    const double t = u1.time(i);
    if (t >= a - 1e-15 && t <= b + 1e-15)
      ts.push_back(std::clamp(t, a, b));
  }
  if (ts.size() < 3) {
    ts.clear();
    for (int i = 0; i < 5; ++i)
      ts.push_back(a + (b - a) * static_cast<double>(i) / 4.0);
  }

  OverlapDistance out;
  out.overlap_t0 = a;
  out.overlap_t1 = b;
  std::vector<Field> diffs;
  diffs.reserve(ts.size());
  for (double t : ts) {
    Field f1 = eval_twisted(u1, t);
    Field f2 = eval_twisted(u2, t);
    Field d = f1 - f2;
    const double ref = std::max(lp_norm(f1, 2.0), 1e-300);
    out.sup_rel_l2 = std::max(out.sup_rel_l2, lp_norm(d, 2.0) / ref);
    diffs.push_back(std::move(d));
  }
  SpaceTimeField diff_traj(ts, std::move(diffs));
  out.l4l6 = mixed_norm(diff_traj, 4.0, 6.0);
  return out;
}

std::vector<PersistencePoint> persistence_report(const SpaceTimeField& u,
                                                 double p) {
  require_arg(p >= 2.0 && p < 4.0, "persistence_report: p in [2,4)");
  SpaceTimeField v = twist(u);
  const std::size_t m = u.num_slices();
  const Field& v0 = v.slice(0);

  // Cumulative trapezoid of ||u(t)||_4^(24/5) for the controlling quantity.
  const double q245 = 24.0 / 5.0;
  std::vector<double> l4(m);
  for (std::size_t i = 0; i < m; ++i) l4[i] = lp_norm(u.slice(i), 4.0);
  std::vector<double> cum(m, 0.0);
  for (std::size_t i = 1; i < m; ++i) {
    const double gi = std::pow(l4[i], q245);
    const double gp = std::pow(l4[i - 1], q245);
    cum[i] = cum[i - 1] + 0.5 * (gi + gp) * (u.time(i) - u.time(i - 1));
  }

  std::vector<PersistencePoint> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    PersistencePoint& pt = out[i];
    pt.t = u.time(i);
    pt.twisted_lp = lp_norm(v.slice(i), p);
    pt.untwisted_lp = lp_norm(u.slice(i), p);
    pt.duhamel_lp = lp_norm(v.slice(i) - v0, p);
    const double elapsed = u.time(i) - u.time(0);
    const double l245 = std::pow(cum[i], 1.0 / q245);
    pt.control = std::pow(elapsed, 1.0 / (6.0 * p)) * l245 * l245 * l245;
  }
  return out;
}

StrichartzReport strichartz_ratio(const std::vector<Field>& family, double p,
                                  double q, double r, StrichartzFlavor flavor,
                                  double horizon, std::size_t time_slices) {
  require_arg(!family.empty(), "strichartz_ratio: empty family");
  require_arg(horizon > 0.0, "strichartz_ratio: horizon > 0");
  require_arg(time_slices >= 3, "strichartz_ratio: need >= 3 time slices");

  if (flavor == StrichartzFlavor::fourier_lp) {
    require_arg(admissibility_window(p, r),
                "strichartz_ratio: (p, r) outside the admissibility window");
    require_arg(std::abs(q - q_exponent(p, r)) < 1e-9,
                "strichartz_ratio: q must equal Q_p(r)");
  } else {
    require_arg(p > 1.0 && p <= 2.0, "strichartz_ratio: kato flavor needs 1 < p <= 2");
    require_arg(std::abs(2.0 / q + 1.0 / r - 1.0 / p) < 1e-9,
                "strichartz_ratio: kato flavor needs 2/q + 1/r = 1/p");
    require_arg(1.0 / q + 1.0 / r < 0.5,
                "strichartz_ratio: kato flavor needs 1/q + 1/r < 1/2");
  }

  // Quadratically graded mesh: resolves the early-time variation of the
  // slice norms for concentrated data.
  std::vector<double> times(time_slices);
  for (std::size_t i = 0; i < time_slices; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(time_slices - 1);
    times[i] = horizon * s * s;
  }

  StrichartzReport report;
  report.q = q;
  report.denominator_p = p;
  report.min_ratio = infinity;
  for (const auto& phi : family) {
    std::vector<Field> slices;
    slices.reserve(time_slices);
    for (double t : times) slices.push_back(free_propagate(phi, t));
    SpaceTimeField traj(times, std::move(slices));
    const double numerator = mixed_norm(traj, q, r);
    const double denominator = flavor == StrichartzFlavor::fourier_lp
                                   ? fourier_lp_norm(phi, p)
                                   : lp_norm(phi, p);
    require_arg(denominator > 0.0, "strichartz_ratio: zero field in family");
    const double ratio = numerator / denominator;
    report.ratios.push_back(ratio);
    report.max_ratio = std::max(report.max_ratio, ratio);
    report.min_ratio = std::min(report.min_ratio, ratio);
  }
  return report;
}

}  // namespace nlslab
