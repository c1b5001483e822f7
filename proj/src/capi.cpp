#include "nlslab/nlslab.h"

#include <cstring>
#include <new>
#include <string>

#include "nlslab/acceptance.hpp"
#include "nlslab/globalize.hpp"
#include "nlslab/initial_data.hpp"
#include "nlslab/runner.hpp"

using namespace nlslab;

namespace {

thread_local std::string g_last_error;

nls_status code_of(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ok: return NLS_OK;
    case ErrorCode::invalid_argument: return NLS_EINVAL;
    case ErrorCode::degenerate_exponent: return NLS_EDEGENERATE;
    case ErrorCode::cut_unreachable: return NLS_ECUT;
    case ErrorCode::blow_up: return NLS_EBLOWUP;
    case ErrorCode::no_contraction: return NLS_ENOCONTRACT;
    case ErrorCode::config: return NLS_ECONFIG;
    case ErrorCode::io: return NLS_EIO;
    case ErrorCode::internal: return NLS_EINTERNAL;
  }
  return NLS_EINTERNAL;
}

template <typename Fn>
nls_status guarded(Fn&& fn) {
  try {
    fn();
    return NLS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return code_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NLS_EINTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return NLS_EINTERNAL;
  }
}

SolverConfig to_cfg(const nls_solver_config* c) {
  SolverConfig cfg;
  if (!c) return cfg;
  if (c->dt > 0.0) cfg.dt = c->dt;
  cfg.scheme = c->picard ? Scheme::picard_duhamel : Scheme::strang_splitstep;
  if (c->picard_max_iter > 0) cfg.picard_max_iter = c->picard_max_iter;
  if (c->picard_tol > 0.0) cfg.picard_tol = c->picard_tol;
  if (c->blowup_factor > 0.0) cfg.blowup_factor = c->blowup_factor;
  cfg.store_slices = c->store_slices;
  return cfg;
}

}  // namespace

struct nls_grid {
  GridSpec grid;
};
struct nls_field {
  Field field;
};
struct nls_traj {
  SpaceTimeField traj;
};
struct nls_scheme {
  SchemeResult result;
};

extern "C" {

const char* nls_version(void) {
  static std::string v = nlslab_version();
  return v.c_str();
}

const char* nls_last_error(void) { return g_last_error.c_str(); }

/* --- grids and fields --- */

nls_status nls_grid_create(size_t n_points, double half_width,
                           nls_grid** out) {
  return guarded([&] {
    require_arg(out != nullptr, "nls_grid_create: out is null");
    *out = new nls_grid{GridSpec(n_points, half_width)};
  });
}

void nls_grid_free(nls_grid* grid) { delete grid; }

size_t nls_grid_n_points(const nls_grid* grid) {
  return grid ? grid->grid.n_points() : 0;
}
double nls_grid_half_width(const nls_grid* grid) {
  return grid ? grid->grid.half_width() : 0.0;
}
double nls_grid_dx(const nls_grid* grid) {
  return grid ? grid->grid.dx() : 0.0;
}

nls_status nls_field_create(const nls_grid* grid, const double* interleaved,
                            nls_field** out) {
  return guarded([&] {
    require_arg(grid && interleaved && out, "nls_field_create: null argument");
    const std::size_t n = grid->grid.n_points();
    std::vector<Complex> s(n);
    for (std::size_t j = 0; j < n; ++j)
      s[j] = Complex(interleaved[2 * j], interleaved[2 * j + 1]);
    *out = new nls_field{Field(grid->grid, std::move(s))};
  });
}

void nls_field_free(nls_field* field) { delete field; }

size_t nls_field_n_points(const nls_field* field) {
  return field ? field->field.size() : 0;
}

nls_status nls_field_samples(const nls_field* field, double* interleaved) {
  return guarded([&] {
    require_arg(field && interleaved, "nls_field_samples: null argument");
    const auto& s = field->field.samples();
    for (std::size_t j = 0; j < s.size(); ++j) {
      interleaved[2 * j] = s[j].real();
      interleaved[2 * j + 1] = s[j].imag();
    }
  });
}

nls_status nls_field_gaussian(const nls_grid* grid, double a,
                              nls_field** out) {
  return guarded([&] {
    require_arg(grid && out, "nls_field_gaussian: null argument");
    *out = new nls_field{gaussian_data(grid->grid, a)};
  });
}

nls_status nls_field_soliton(const nls_grid* grid, nls_field** out) {
  return guarded([&] {
    require_arg(grid && out, "nls_field_soliton: null argument");
    *out = new nls_field{soliton_data(grid->grid)};
  });
}

nls_status nls_field_power_law(const nls_grid* grid, double beta,
                               double amplitude, nls_field** out) {
  return guarded([&] {
    require_arg(grid && out, "nls_field_power_law: null argument");
    *out = new nls_field{power_law_data(grid->grid, beta, amplitude)};
  });
}

nls_status nls_field_random_smooth(const nls_grid* grid, uint64_t seed,
                                   double x_width, double band,
                                   nls_field** out) {
  return guarded([&] {
    require_arg(grid && out, "nls_field_random_smooth: null argument");
    *out = new nls_field{random_smooth_data(grid->grid, seed, x_width, band)};
  });
}

nls_status nls_field_add(const nls_field* a, const nls_field* b,
                         nls_field** out) {
  return guarded([&] {
    require_arg(a && b && out, "nls_field_add: null argument");
    *out = new nls_field{a->field + b->field};
  });
}

/* --- spectral core --- */

nls_status nls_fourier(const nls_field* f, nls_field** out) {
  return guarded([&] {
    require_arg(f && out, "nls_fourier: null argument");
    *out = new nls_field{fourier(f->field)};
  });
}

nls_status nls_inverse_fourier(const nls_field* f, nls_field** out) {
  return guarded([&] {
    require_arg(f && out, "nls_inverse_fourier: null argument");
    *out = new nls_field{inverse_fourier(f->field)};
  });
}

nls_status nls_free_propagate(const nls_field* f, double t, nls_field** out) {
  return guarded([&] {
    require_arg(f && out, "nls_free_propagate: null argument");
    *out = new nls_field{free_propagate(f->field, t)};
  });
}

nls_status nls_lp_norm(const nls_field* f, double p, double* out) {
  return guarded([&] {
    require_arg(f && out, "nls_lp_norm: null argument");
    *out = lp_norm(f->field, p);
  });
}

nls_status nls_fourier_lp_norm(const nls_field* f, double p, double* out) {
  return guarded([&] {
    require_arg(f && out, "nls_fourier_lp_norm: null argument");
    *out = fourier_lp_norm(f->field, p);
  });
}

/* --- exponent ledger --- */

nls_status nls_conjugate_exponent(double a, double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "nls_conjugate_exponent: out is null");
    *out = conjugate_exponent(a);
  });
}

nls_status nls_q_exponent(double p, double r, double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "nls_q_exponent: out is null");
    *out = q_exponent(p, r);
  });
}

nls_status nls_admissibility_window(double p, double r, int* out) {
  return guarded([&] {
    require_arg(out != nullptr, "nls_admissibility_window: out is null");
    *out = admissibility_window(p, r) ? 1 : 0;
  });
}

nls_status nls_theta_from_target(double p, double p0, double* theta,
                                 double* alpha) {
  return guarded([&] {
    require_arg(theta && alpha, "nls_theta_from_target: null argument");
    ThetaParams tp = theta_from_target(p, p0);
    *theta = tp.theta;
    *alpha = tp.alpha;
  });
}

nls_status nls_globalcond_threshold(double p0, double* out) {
  return guarded([&] {
    require_arg(out != nullptr, "nls_globalcond_threshold: out is null");
    *out = globalcond_threshold(p0);
  });
}

/* --- decomposition --- */

nls_status nls_height_split(const nls_field* f, double lambda,
                            nls_field** tall, nls_field** short_part) {
  return guarded([&] {
    require_arg(f && tall && short_part, "nls_height_split: null argument");
    HeightSplit hs = height_split(f->field, lambda);
    *tall = new nls_field{std::move(hs.tall)};
    *short_part = new nls_field{std::move(hs.short_part)};
  });
}

nls_status nls_choose_cut(const nls_field* f, double target, double* lambda) {
  return guarded([&] {
    require_arg(f && lambda, "nls_choose_cut: null argument");
    *lambda = choose_cut(f->field, target);
  });
}

nls_status nls_d_class_decompose(const nls_field* f, double p0, double alpha,
                                 double n, nls_field** phi_n,
                                 nls_field** psi_n, double* c0_fit) {
  return guarded([&] {
    require_arg(f && phi_n && psi_n && c0_fit,
                "nls_d_class_decompose: null argument");
    DecompositionPair pair = d_class_decompose(f->field, p0, alpha, n);
    *c0_fit = pair.c0_fit;
    *phi_n = new nls_field{std::move(pair.phi_n)};
    *psi_n = new nls_field{std::move(pair.psi_n)};
  });
}

/* --- solvers --- */

nls_status nls_solve_nls(const nls_field* phi, double t1, double t2,
                         const nls_solver_config* cfg, nls_traj** out) {
  return guarded([&] {
    require_arg(phi && out, "nls_solve_nls: null argument");
    *out = new nls_traj{solve_nls(phi->field, t1, t2, to_cfg(cfg))};
  });
}

nls_status nls_solve_difference(const nls_traj* v, const nls_field* psi,
                                const nls_solver_config* cfg,
                                nls_traj** out) {
  return guarded([&] {
    require_arg(v && psi && out, "nls_solve_difference: null argument");
    *out = new nls_traj{solve_difference(v->traj, psi->field, to_cfg(cfg))};
  });
}

nls_status nls_difference_nonlinearity(const nls_field* v, const nls_field* w,
                                       nls_field** out) {
  return guarded([&] {
    require_arg(v && w && out, "nls_difference_nonlinearity: null argument");
    *out = new nls_field{difference_nonlinearity(v->field, w->field)};
  });
}

nls_status nls_factorization_check(const nls_field* z1, const nls_field* z2,
                                   const nls_field* z3, double t,
                                   double* c_re, double* c_im,
                                   double* relative_error) {
  return guarded([&] {
    require_arg(z1 && z2 && z3 && c_re && c_im && relative_error,
                "nls_factorization_check: null argument");
    FactorizationCheck fc =
        factorization_check(z1->field, z2->field, z3->field, t);
    *c_re = fc.fitted_c.real();
    *c_im = fc.fitted_c.imag();
    *relative_error = fc.relative_error;
  });
}

/* --- trajectories and norms --- */

void nls_traj_free(nls_traj* traj) { delete traj; }

size_t nls_traj_num_slices(const nls_traj* traj) {
  return traj ? traj->traj.num_slices() : 0;
}

double nls_traj_time(const nls_traj* traj, size_t i) {
  return (traj && i < traj->traj.num_slices()) ? traj->traj.time(i) : 0.0;
}

nls_status nls_traj_slice(const nls_traj* traj, size_t i, nls_field** out) {
  return guarded([&] {
    require_arg(traj && out, "nls_traj_slice: null argument");
    require_arg(i < traj->traj.num_slices(),
                "nls_traj_slice: index out of range");
    *out = new nls_field{traj->traj.slice(i)};
  });
}

nls_status nls_mixed_norm(const nls_traj* u, double q, double r,
                          double* out) {
  return guarded([&] {
    require_arg(u && out, "nls_mixed_norm: null argument");
    *out = mixed_norm(u->traj, q, r);
  });
}

nls_status nls_twist(const nls_traj* u, nls_traj** out) {
  return guarded([&] {
    require_arg(u && out, "nls_twist: null argument");
    *out = new nls_traj{twist(u->traj)};
  });
}

nls_status nls_x_seminorm(const nls_traj* v, double p, double q, double theta,
                          double* out) {
  return guarded([&] {
    require_arg(v && out, "nls_x_seminorm: null argument");
    *out = x_seminorm(v->traj, p, q, theta);
  });
}

nls_status nls_y_norm(const nls_traj* u, double p, double q, double theta,
                      double* out) {
  return guarded([&] {
    require_arg(u && out, "nls_y_norm: null argument");
    *out = y_norm(u->traj, p, q, theta);
  });
}

/* --- globalization --- */

nls_status nls_make_plan(double p0, double alpha, double n, double m,
                         double c0, double c_small, nls_plan* out) {
  return guarded([&] {
    require_arg(out != nullptr, "nls_make_plan: out is null");
    GlobalizationPlan plan = make_plan(p0, alpha, n, m, c0, c_small);
    *out = nls_plan{plan.p0,      plan.alpha, plan.n,  plan.m,
                    plan.c0,      plan.c_small, plan.delta_n,
                    plan.n0,      plan.t_n,   plan.globalcond ? 1 : 0};
  });
}

nls_status nls_run_scheme(const nls_field* phi, double p0, double alpha,
                          double n, double m, double c_small,
                          const nls_solver_config* cfg, double t_cap,
                          nls_scheme** out) {
  return guarded([&] {
    require_arg(phi && out, "nls_run_scheme: null argument");
    SchemeOptions opts;
    if (t_cap > 0.0) opts.t_cap = t_cap;
    *out = new nls_scheme{
        run_scheme(phi->field, p0, alpha, n, m, c_small, to_cfg(cfg), opts)};
  });
}

void nls_scheme_free(nls_scheme* scheme) { delete scheme; }

size_t nls_scheme_num_slabs(const nls_scheme* scheme) {
  return scheme ? scheme->result.records.size() : 0;
}

nls_status nls_scheme_slab_row(const nls_scheme* scheme, size_t k,
                               double row[12]) {
  return guarded([&] {
    require_arg(scheme && row, "nls_scheme_slab_row: null argument");
    require_arg(k < scheme->result.records.size(),
                "nls_scheme_slab_row: index out of range");
    const SlabRecord& r = scheme->result.records[k];
    row[0] = r.k;
    row[1] = r.t0;
    row[2] = r.t1;
    row[3] = r.phi_k_l2;
    row[4] = r.phi_budget;
    row[5] = r.w_y_seminorm;
    row[6] = r.w_budget;
    row[7] = r.duhamel_l2;
    row[8] = r.psi_l2;
    row[9] = r.psi_lp0;
    row[10] = r.phi_budget_ok ? 1.0 : 0.0;
    row[11] = r.w_budget_ok ? 1.0 : 0.0;
  });
}

nls_status nls_scheme_trajectory(const nls_scheme* scheme, nls_traj** out) {
  return guarded([&] {
    require_arg(scheme && out, "nls_scheme_trajectory: null argument");
    *out = new nls_traj{scheme->result.u};
  });
}

nls_status nls_scheme_plan(const nls_scheme* scheme, nls_plan* out) {
  return guarded([&] {
    require_arg(scheme && out, "nls_scheme_plan: null argument");
    const GlobalizationPlan& plan = scheme->result.plan;
    *out = nls_plan{plan.p0,      plan.alpha, plan.n,  plan.m,
                    plan.c0,      plan.c_small, plan.delta_n,
                    plan.n0,      plan.t_n,   plan.globalcond ? 1 : 0};
  });
}

int nls_scheme_status(const nls_scheme* scheme) {
  if (!scheme) return -1;
  switch (scheme->result.status) {
    case SchemeStatus::completed: return 0;
    case SchemeStatus::budget_violation: return 1;
    case SchemeStatus::capped: return 2;
  }
  return -1;
}

nls_status nls_uniqueness_overlap(const nls_traj* u1, const nls_traj* u2,
                                  double* sup_rel_l2, double* l4l6) {
  return guarded([&] {
    require_arg(u1 && u2 && sup_rel_l2 && l4l6,
                "nls_uniqueness_overlap: null argument");
    OverlapDistance d = uniqueness_overlap(u1->traj, u2->traj);
    *sup_rel_l2 = d.sup_rel_l2;
    *l4l6 = d.l4l6;
  });
}

/* --- harness --- */

int nls_run_experiment(const char* kind, const char* config_path,
                       const char* out_dir, int64_t seed,
                       double resolution_scale, int quiet) {
  try {
    require(kind != nullptr && config_path != nullptr, ErrorCode::config,
            "nls_run_experiment: kind and config_path are required");
    ExperimentKind k = parse_kind(kind);
    RunOptions opts;
    opts.out_dir = out_dir ? out_dir : "";
    if (seed >= 0) opts.seed_override = static_cast<std::uint64_t>(seed);
    opts.resolution_scale = resolution_scale > 0.0 ? resolution_scale : 1.0;
    opts.quiet = quiet != 0;
    RunReport report = run_experiment_path(config_path, k, opts);
    return report.all_checks_pass() ? 0 : 1;
  } catch (const Error& e) {
    g_last_error = e.what();
    switch (e.code()) {
      case ErrorCode::config:
      case ErrorCode::invalid_argument:
      case ErrorCode::io:
        return 2;
      case ErrorCode::blow_up:
      case ErrorCode::no_contraction:
        return 3;
      default:
        return 3;
    }
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return 3;
  }
}

nls_status nls_render_report_file(const char* json_path, char** out) {
  return guarded([&] {
    require_arg(json_path && out, "nls_render_report_file: null argument");
    const std::string text = render_report(read_json_report(json_path));
    *out = new char[text.size() + 1];
    std::memcpy(*out, text.c_str(), text.size() + 1);
  });
}

void nls_free_str(char* s) { delete[] s; }

}  // extern "C"
