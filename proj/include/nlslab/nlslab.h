/*
 * nlslab C API: opaque handles and error codes over the spectral core,
 * norms, decomposition, solvers, globalization driver and experiment
 * harness. All functions return nls_status (NLS_OK on success) unless
 * noted; the most recent error message is available per thread via
 * nls_last_error().
 *
 * Complex sample buffers are interleaved double pairs (re, im), length
 * 2 * n_points.
 */
#ifndef NLSLAB_C_API_H
#define NLSLAB_C_API_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nls_status {
  NLS_OK = 0,
  NLS_EINVAL = 1,       /* contract violation */
  NLS_EDEGENERATE = 2,  /* Q_p(r) undefined for these exponents */
  NLS_ECUT = 3,         /* height-cut target unreachable */
  NLS_EBLOWUP = 4,      /* amplitude ceiling exceeded */
  NLS_ENOCONTRACT = 5,  /* fixed-point iteration failed */
  NLS_ECONFIG = 6,      /* malformed experiment config */
  NLS_EIO = 7,          /* file i/o failure */
  NLS_EINTERNAL = 8
} nls_status;

typedef struct nls_grid nls_grid;
typedef struct nls_field nls_field;
typedef struct nls_traj nls_traj;

const char* nls_version(void);
/* Thread-local message for the most recent failing call. */
const char* nls_last_error(void);

/* --- grids and fields -------------------------------------------------- */

nls_status nls_grid_create(size_t n_points, double half_width,
                           nls_grid** out);
void nls_grid_free(nls_grid* grid);
size_t nls_grid_n_points(const nls_grid* grid);
double nls_grid_half_width(const nls_grid* grid);
double nls_grid_dx(const nls_grid* grid);

nls_status nls_field_create(const nls_grid* grid, const double* interleaved,
                            nls_field** out);
void nls_field_free(nls_field* field);
size_t nls_field_n_points(const nls_field* field);
/* Copies samples into caller storage (interleaved, length 2*n). */
nls_status nls_field_samples(const nls_field* field, double* interleaved);

nls_status nls_field_gaussian(const nls_grid* grid, double a, nls_field** out);
nls_status nls_field_soliton(const nls_grid* grid, nls_field** out);
nls_status nls_field_power_law(const nls_grid* grid, double beta,
                               double amplitude, nls_field** out);
nls_status nls_field_random_smooth(const nls_grid* grid, uint64_t seed,
                                   double x_width, double band,
                                   nls_field** out);
nls_status nls_field_add(const nls_field* a, const nls_field* b,
                         nls_field** out);

/* --- spectral core ------------------------------------------------------ */

nls_status nls_fourier(const nls_field* f, nls_field** out);
nls_status nls_inverse_fourier(const nls_field* f, nls_field** out);
nls_status nls_free_propagate(const nls_field* f, double t, nls_field** out);
nls_status nls_lp_norm(const nls_field* f, double p, double* out);
nls_status nls_fourier_lp_norm(const nls_field* f, double p, double* out);

/* --- exponent ledger ----------------------------------------------------- */

nls_status nls_conjugate_exponent(double a, double* out);
nls_status nls_q_exponent(double p, double r, double* out);
nls_status nls_admissibility_window(double p, double r, int* out);
nls_status nls_theta_from_target(double p, double p0, double* theta,
                                 double* alpha);
nls_status nls_globalcond_threshold(double p0, double* out);

/* --- decomposition ------------------------------------------------------- */

nls_status nls_height_split(const nls_field* f, double lambda,
                            nls_field** tall, nls_field** short_part);
nls_status nls_choose_cut(const nls_field* f, double target, double* lambda);
nls_status nls_d_class_decompose(const nls_field* f, double p0, double alpha,
                                 double n, nls_field** phi_n,
                                 nls_field** psi_n, double* c0_fit);

/* --- solvers -------------------------------------------------------------- */

typedef struct nls_solver_config {
  double dt;              /* time step (default 1e-4 when 0) */
  int picard;             /* 0: strang split-step, 1: picard/duhamel */
  int picard_max_iter;    /* default 50 when 0 */
  double picard_tol;      /* default 1e-10 when 0 */
  double blowup_factor;   /* default 1e6 when 0 */
  size_t store_slices;    /* kept slices, 0 keeps every step */
} nls_solver_config;

nls_status nls_solve_nls(const nls_field* phi, double t1, double t2,
                         const nls_solver_config* cfg, nls_traj** out);
nls_status nls_solve_difference(const nls_traj* v, const nls_field* psi,
                                const nls_solver_config* cfg, nls_traj** out);
nls_status nls_difference_nonlinearity(const nls_field* v, const nls_field* w,
                                       nls_field** out);
nls_status nls_factorization_check(const nls_field* z1, const nls_field* z2,
                                   const nls_field* z3, double t,
                                   double* c_re, double* c_im,
                                   double* relative_error);

/* --- trajectories and norms ------------------------------------------------ */

void nls_traj_free(nls_traj* traj);
size_t nls_traj_num_slices(const nls_traj* traj);
double nls_traj_time(const nls_traj* traj, size_t i);
nls_status nls_traj_slice(const nls_traj* traj, size_t i, nls_field** out);

nls_status nls_mixed_norm(const nls_traj* u, double q, double r, double* out);
nls_status nls_twist(const nls_traj* u, nls_traj** out);
nls_status nls_x_seminorm(const nls_traj* v, double p, double q, double theta,
                          double* out);
nls_status nls_y_norm(const nls_traj* u, double p, double q, double theta,
                      double* out);

/* --- globalization ---------------------------------------------------------- */

typedef struct nls_plan {
  double p0, alpha, n, m, c0, c_small;
  double delta_n;
  long long n0;
  double t_n;
  int globalcond;
} nls_plan;

nls_status nls_make_plan(double p0, double alpha, double n, double m,
                         double c0, double c_small, nls_plan* out);

/* Scheme run: returns the recombined trajectory plus per-slab monitor
 * rows (length nls_scheme_num_slabs, 12 doubles per row in the order
 * k, t0, t1, phi_k_l2, phi_budget, w_y_seminorm, w_budget, duhamel_l2,
 * psi_l2, psi_lp0, phi_budget_ok, w_budget_ok). */
typedef struct nls_scheme nls_scheme;
nls_status nls_run_scheme(const nls_field* phi, double p0, double alpha,
                          double n, double m, double c_small,
                          const nls_solver_config* cfg, double t_cap,
                          nls_scheme** out);
void nls_scheme_free(nls_scheme* scheme);
size_t nls_scheme_num_slabs(const nls_scheme* scheme);
nls_status nls_scheme_slab_row(const nls_scheme* scheme, size_t k,
                               double row[12]);
nls_status nls_scheme_trajectory(const nls_scheme* scheme, nls_traj** out);
nls_status nls_scheme_plan(const nls_scheme* scheme, nls_plan* out);
/* 0 completed, 1 budget violation, 2 capped by t_cap */
int nls_scheme_status(const nls_scheme* scheme);

nls_status nls_uniqueness_overlap(const nls_traj* u1, const nls_traj* u2,
                                  double* sup_rel_l2, double* l4l6);

/* --- harness ---------------------------------------------------------------- */

/* Runs the experiment described by the JSON config at config_path
 * ("default" selects the built-in config for `kind`). kind is one of
 * "propagate", "split", "evolve", "globalize", "verify". seed < 0 keeps
 * the config seed. Returns, like the CLI, 0 on success, 1 on check
 * failure, 2 on config error, 3 on numerical abort. */
int nls_run_experiment(const char* kind, const char* config_path,
                       const char* out_dir, int64_t seed,
                       double resolution_scale, int quiet);

/* Renders a persisted JSON report as text; caller frees with nls_free_str. */
nls_status nls_render_report_file(const char* json_path, char** out);
void nls_free_str(char* s);

#ifdef __cplusplus
}
#endif

#endif /* NLSLAB_C_API_H */
