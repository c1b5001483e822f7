#include "nlslab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace nlslab {

namespace {

using Buf = std::vector<Complex>;

struct Mesh {
  double t1 = 0.0;
  double h = 0.0;
  std::size_t n_steps = 0;
  double time(std::size_t i, double t2) const {
    return i == n_steps ? t2 : t1 + static_cast<double>(i) * h;
  }
};

Mesh make_mesh(double t1, double t2, double dt) {
  require_arg(t2 > t1, "solver: requires t2 > t1");
  require_arg(dt > 0.0, "solver: requires dt > 0");
  Mesh m;
  m.t1 = t1;
  m.n_steps = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil((t2 - t1) / dt - 1e-12)));
  m.h = (t2 - t1) / static_cast<double>(m.n_steps);
  return m;
}

std::size_t store_stride(std::size_t n_steps, std::size_t store_slices) {
  if (store_slices != 0 && store_slices < 3) store_slices = 3;
  if (store_slices == 0 || n_steps + 1 <= store_slices) return 1;
  return (n_steps + store_slices - 2) / (store_slices - 1);
}

// exp(i sign |u|^2 tau) u, pointwise; exact for the potential sub-flow.
void phase_kick(Buf& u, double tau, double sign) {
  for (auto& z : u) {
    const double phase = sign * std::norm(z) * tau;
    z *= Complex(std::cos(phase), std::sin(phase));
  }
}

// In-place free flow by time h via the cached DFT pair.
class FreeStepper {
public:
  FreeStepper(const GridSpec& grid, double h) : n_(grid.n_points()) {
    mult_.resize(n_);
    const double inv_n = 1.0 / static_cast<double>(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      const double xi = grid.xi(k);
      const double phase = -h * xi * xi;
      mult_[k] = Complex(std::cos(phase), std::sin(phase)) * inv_n;
    }
    scratch_.resize(n_);
  }

  void apply(Buf& u) {
    detail::dft_forward(u.data(), scratch_.data(), n_);
    for (std::size_t k = 0; k < n_; ++k) scratch_[k] *= mult_[k];
    detail::dft_backward(scratch_.data(), u.data(), n_);
  }

private:
  std::size_t n_;
  Buf mult_;
  Buf scratch_;
};

double max_abs(const Buf& u) {
  double m = 0.0;
  for (const auto& z : u) m = std::max(m, std::abs(z));
  return m;
}

void guard_blowup(const Buf& u, double ceiling, double t) {
  if (max_abs(u) > ceiling) {
    fail(ErrorCode::blow_up,
         "solver: amplitude ceiling exceeded at t = " + std::to_string(t));
  }
  for (const auto& z : u) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      fail(ErrorCode::blow_up,
           "solver: non-finite value at t = " + std::to_string(t));
  }
}

SpaceTimeField picard_nls(const Field& phi, double t1, double t2,
                          const SolverConfig& cfg);

SpaceTimeField strang_nls(const Field& phi, double t1, double t2,
                          const SolverConfig& cfg) {
  const Mesh mesh = make_mesh(t1, t2, cfg.dt);
  const double sign = cfg.defocusing ? -1.0 : 1.0;
  const double ceiling =
      cfg.blowup_factor * std::max(phi.max_abs(), 1e-300);
  FreeStepper linear(phi.grid(), mesh.h);

  Buf u = phi.samples();
  const std::size_t stride = store_stride(mesh.n_steps, cfg.store_slices);
  std::vector<double> times;
  std::vector<Field> slices;
  times.push_back(t1);
  slices.emplace_back(phi.grid(), u);

  for (std::size_t i = 0; i < mesh.n_steps; ++i) {
    phase_kick(u, 0.5 * mesh.h, sign);
    linear.apply(u);
    phase_kick(u, 0.5 * mesh.h, sign);
    const double t = mesh.time(i + 1, t2);
    guard_blowup(u, ceiling, t);
    if ((i + 1) % stride == 0 || i + 1 == mesh.n_steps) {
      times.push_back(t);
      slices.emplace_back(phi.grid(), u);
    }
  }
  // The X-norms need interior differencing; guarantee a third slice.
  if (times.size() < 3) {
    fail(ErrorCode::internal, "strang_nls: fewer than 3 stored slices");
  }
  return SpaceTimeField(std::move(times), std::move(slices));
}

// Cumulative trapezoid of per-slice fields g_i from index 0, in place.
std::vector<Buf> cumtrapz(const std::vector<Buf>& g,
                          const std::vector<double>& t) {
  std::vector<Buf> out(g.size(), Buf(g.front().size()));
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double half_h = 0.5 * (t[i] - t[i - 1]);
    for (std::size_t j = 0; j < g[i].size(); ++j)
      out[i][j] = out[i - 1][j] + half_h * (g[i][j] + g[i - 1][j]);
  }
  return out;
}

double sup_l2_diff(const std::vector<Buf>& a, const std::vector<Buf>& b,
                   double dx) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a[i].size(); ++j)
      s += std::norm(a[i][j] - b[i][j]);
    m = std::max(m, std::sqrt(s * dx));
  }
  return m;
}

SpaceTimeField picard_nls(const Field& phi, double t1, double t2,
                          const SolverConfig& cfg) {
  const Mesh mesh = make_mesh(t1, t2, cfg.dt);
  const double sign = cfg.defocusing ? -1.0 : 1.0;
  const GridSpec& grid = phi.grid();
  const std::size_t n = grid.n_points();
  const std::size_t m = mesh.n_steps + 1;
  std::vector<double> times(m);
  for (std::size_t i = 0; i < m; ++i) times[i] = mesh.time(i, t2);

  // Iterate the twisted integral equation
  //   V(t) = phi + i Integral_{t1}^{t} U(-(s-t1)) |u|^2 u (s) ds,
  // u(s) = U(s-t1) V(s), starting from the free flow V == phi.
  std::vector<Buf> v(m, phi.samples());
  std::vector<Buf> g(m, Buf(n));
  Buf scratch(n);

  auto untwist_at = [&](const Buf& V, double tau, Buf& out) {
    detail::dft_forward(V.data(), scratch.data(), n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double xi = grid.xi(k);
      const double phase = -tau * xi * xi;
      scratch[k] *= Complex(std::cos(phase), std::sin(phase)) * inv_n;
    }
    detail::dft_backward(scratch.data(), out.data(), n);
  };

  double prev_change = infinity;
  for (int iter = 0; iter < cfg.picard_max_iter; ++iter) {
    // g(s) = U(-(s-t1)) [ |u|^2 u ](s)
    Buf u(n);
    for (std::size_t i = 0; i < m; ++i) {
      const double tau = times[i] - t1;
      untwist_at(v[i], tau, u);
      for (std::size_t j = 0; j < n; ++j) u[j] = std::norm(u[j]) * u[j];
      untwist_at(u, -tau, g[i]);
    }
    std::vector<Buf> integral = cumtrapz(g, times);
    std::vector<Buf> v_next(m, Buf(n));
    const Complex i_sign(0.0, sign);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        v_next[i][j] = phi[j] + i_sign * integral[i][j];

    const double change = sup_l2_diff(v_next, v, grid.dx());
    double scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) scale += std::norm(v_next[0][j]);
    scale = std::max(std::sqrt(scale * grid.dx()), 1e-300);
    v.swap(v_next);
    if (change / scale < cfg.picard_tol) {
      std::vector<Field> slices;
      std::vector<double> slice_times;
      const std::size_t stride = store_stride(mesh.n_steps, cfg.store_slices);
      Buf out(n);
      for (std::size_t i = 0; i < m; ++i) {
        if (i % stride == 0 || i + 1 == m) {
          untwist_at(v[i], times[i] - t1, out);
          slice_times.push_back(times[i]);
          slices.emplace_back(grid, out);
        }
      }
      return SpaceTimeField(std::move(slice_times), std::move(slices));
    }
    if (change > 4.0 * prev_change && iter > 2) {
      fail(ErrorCode::no_contraction,
           "picard_nls: iteration diverging (interval too long for the data)");
    }
    prev_change = change;
  }
  fail(ErrorCode::no_contraction,
       "picard_nls: no fixed point within picard_max_iter iterations");
}

}  // namespace

SpaceTimeField solve_nls(const Field& phi, double t1, double t2,
                         const SolverConfig& cfg) {
  if (cfg.scheme == Scheme::picard_duhamel) return picard_nls(phi, t1, t2, cfg);
  return strang_nls(phi, t1, t2, cfg);
}

L2LocalResult solve_l2_local(const Field& phi, double t0, double k2,
                             const SolverConfig& cfg, double k1) {
  require_arg(k2 > 0.0, "solve_l2_local: requires k2 > 0");
  const double phi_l2 = lp_norm(phi, 2.0);
  require_arg(phi_l2 > 0.0, "solve_l2_local: requires ||phi||_2 > 0");
  const double t0_span = std::pow(k2 * phi_l2, -4.0);
  L2LocalResult out{solve_nls(phi, t0, t0 + t0_span, cfg), t0_span, 0.0, 0.0};
  out.y2_seminorm = y_seminorm(out.traj, 2.0, 2.0);
  out.k1_bound = k1 * phi_l2 * phi_l2 * phi_l2;
  return out;
}

Field difference_nonlinearity(const Field& v, const Field& w) {
  require_same_grid(v, w, "difference_nonlinearity");
  std::vector<Complex> s(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const Complex a = v[j], b = w[j];
    const Complex ac = std::conj(a), bc = std::conj(b);
    s[j] = a * a * bc + 2.0 * a * ac * b + 2.0 * a * b * bc + ac * b * b +
           b * b * bc;
  }
  return Field(v.grid(), std::move(s));
}

namespace {

SpaceTimeField picard_difference(const SpaceTimeField& v_traj,
                                 const Field& psi, const SolverConfig& cfg) {
  const double t1 = v_traj.t_begin(), t2 = v_traj.t_end();
  const Mesh mesh = make_mesh(t1, t2, cfg.dt);
  const double sign = cfg.defocusing ? -1.0 : 1.0;
  const GridSpec& grid = psi.grid();
  const std::size_t n = grid.n_points();
  const std::size_t m = mesh.n_steps + 1;
  std::vector<double> times(m);
  for (std::size_t i = 0; i < m; ++i) times[i] = mesh.time(i, t2);

  std::vector<Field> v_at(m, Field(grid));
  for (std::size_t i = 0; i < m; ++i) v_at[i] = v_traj.at_time(times[i]);

  std::vector<Buf> w(m, psi.samples());
  std::vector<Buf> g(m, Buf(n));
  Buf scratch(n);
  auto untwist_at = [&](const Buf& V, double tau, Buf& out) {
    detail::dft_forward(V.data(), scratch.data(), n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double xi = grid.xi(k);
      const double phase = -tau * xi * xi;
      scratch[k] *= Complex(std::cos(phase), std::sin(phase)) * inv_n;
    }
    detail::dft_backward(scratch.data(), out.data(), n);
  };

  double prev_change = infinity;
  for (int iter = 0; iter < cfg.picard_max_iter; ++iter) {
    Buf wu(n);
    for (std::size_t i = 0; i < m; ++i) {
      const double tau = times[i] - t1;
      untwist_at(w[i], tau, wu);
      Field gw = difference_nonlinearity(v_at[i], Field(grid, wu));
      untwist_at(gw.samples(), -tau, g[i]);
    }
    std::vector<Buf> integral = cumtrapz(g, times);
    std::vector<Buf> w_next(m, Buf(n));
    const Complex i_sign(0.0, sign);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        w_next[i][j] = psi[j] + i_sign * integral[i][j];

    const double change = sup_l2_diff(w_next, w, grid.dx());
    const double scale =
        std::max(lp_norm(psi, 2.0), 1e-300);
    w.swap(w_next);
    if (change / scale < cfg.picard_tol) {
      std::vector<Field> slices;
      std::vector<double> slice_times;
      const std::size_t stride = store_stride(mesh.n_steps, cfg.store_slices);
      Buf out(n);
      for (std::size_t i = 0; i < m; ++i) {
        if (i % stride == 0 || i + 1 == m) {
          untwist_at(w[i], times[i] - t1, out);
          slice_times.push_back(times[i]);
          slices.emplace_back(grid, out);
        }
      }
      return SpaceTimeField(std::move(slice_times), std::move(slices));
    }
    if (change > 4.0 * prev_change && iter > 2) {
      fail(ErrorCode::no_contraction, "picard_difference: iteration diverging");
    }
    prev_change = change;
  }
  fail(ErrorCode::no_contraction,
       "picard_difference: no fixed point within picard_max_iter iterations");
}

SpaceTimeField strang_difference(const SpaceTimeField& v_traj,
                                 const Field& psi, const SolverConfig& cfg) {
  const double t1 = v_traj.t_begin(), t2 = v_traj.t_end();
  const Mesh mesh = make_mesh(t1, t2, cfg.dt);
  const double sign = cfg.defocusing ? -1.0 : 1.0;
  const GridSpec& grid = psi.grid();
  FreeStepper linear(grid, mesh.h);
  const double ceiling =
      cfg.blowup_factor *
      std::max(psi.max_abs() + v_traj.slice(0).max_abs(), 1e-300);

  // One Strang step of w is the difference of Strang steps of v+w and v,
  // with the background's stage value rebuilt from v(t_i). When v_traj
  // came from the same stepper at the same dt this reproduces
  // solve_nls(v(T1)+psi) - v exactly up to round-off.
  Buf w = psi.samples();
  const std::size_t stride = store_stride(mesh.n_steps, cfg.store_slices);
  std::vector<double> times{t1};
  std::vector<Field> slices{Field(grid, w)};

  const std::size_t n = grid.n_points();
  Buf sum(n), background(n);
  for (std::size_t i = 0; i < mesh.n_steps; ++i) {
    const double t = mesh.time(i, t2);
    const Field v_now = v_traj.at_time(t);
    for (std::size_t j = 0; j < n; ++j) {
      sum[j] = v_now[j] + w[j];
      background[j] = v_now[j];
    }
    phase_kick(sum, 0.5 * mesh.h, sign);
    phase_kick(background, 0.5 * mesh.h, sign);
    linear.apply(sum);
    linear.apply(background);
    phase_kick(sum, 0.5 * mesh.h, sign);
    phase_kick(background, 0.5 * mesh.h, sign);
    for (std::size_t j = 0; j < n; ++j) w[j] = sum[j] - background[j];

    const double t_next = mesh.time(i + 1, t2);
    guard_blowup(w, ceiling, t_next);
    if ((i + 1) % stride == 0 || i + 1 == mesh.n_steps) {
      times.push_back(t_next);
      slices.emplace_back(grid, w);
    }
  }
  return SpaceTimeField(std::move(times), std::move(slices));
}

}  // namespace

SpaceTimeField solve_difference(const SpaceTimeField& v_traj, const Field& psi,
                                const SolverConfig& cfg) {
  require_arg(psi.grid() == v_traj.grid(),
              "solve_difference: psi and v_traj on different grids");
  if (cfg.scheme == Scheme::picard_duhamel)
    return picard_difference(v_traj, psi, cfg);
  return strang_difference(v_traj, psi, cfg);
}

TrilinearResult trilinear_duhamel(const SpaceTimeField& z1,
                                  const SpaceTimeField& z2,
                                  const SpaceTimeField& z3, double t0) {
  require_arg(z1.grid() == z2.grid() && z1.grid() == z3.grid(),
              "trilinear_duhamel: common grid required");
  require_arg(z1.num_slices() == z2.num_slices() &&
                  z1.num_slices() == z3.num_slices(),
              "trilinear_duhamel: common time mesh required");
  for (std::size_t i = 0; i < z1.num_slices(); ++i) {
    require_arg(std::abs(z1.time(i) - z2.time(i)) < 1e-12 &&
                    std::abs(z1.time(i) - z3.time(i)) < 1e-12,
                "trilinear_duhamel: common time mesh required");
  }
  const std::size_t i0 = z1.find_time(t0);
  require_arg(i0 != SpaceTimeField::npos,
              "trilinear_duhamel: t0 is not a mesh point");

  const std::size_t m = z1.num_slices();
  std::vector<Buf> g(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double s = z1.time(i);
    Field a = free_propagate(z1.slice(i), s);
    Field b = free_propagate(z2.slice(i), s);
    Field c = free_propagate(z3.slice(i), s);
    Field prod = Field::pointwise(Field::pointwise(a, b.conj()), c);
    g[i] = free_propagate(prod, -s).samples();
  }
  // Cumulative trapezoid anchored at t0 (negative branch for t < t0).
  const std::size_t n = z1.grid().n_points();
  std::vector<Buf> integral(m, Buf(n));
  for (std::size_t i = i0 + 1; i < m; ++i) {
    const double half_h = 0.5 * (z1.time(i) - z1.time(i - 1));
    for (std::size_t j = 0; j < n; ++j)
      integral[i][j] = integral[i - 1][j] + half_h * (g[i][j] + g[i - 1][j]);
  }
  for (std::size_t i = i0; i-- > 0;) {
    const double half_h = 0.5 * (z1.time(i + 1) - z1.time(i));
    for (std::size_t j = 0; j < n; ++j)
      integral[i][j] = integral[i + 1][j] - half_h * (g[i][j] + g[i + 1][j]);
  }
  std::vector<Field> slices;
  slices.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    slices.emplace_back(z1.grid(), std::move(integral[i]));
  return {SpaceTimeField(z1.times(), std::move(slices)), t0};
}

namespace {

// Chirp M_t f = exp(i x^2 / (4 t)) f; sign < 0 applies the inverse.
Field chirp(const Field& f, double t, double sign) {
  return f.map_with_x([&](double x, Complex z) {
    const double phase = sign * x * x / (4.0 * t);
    return z * Complex(std::cos(phase), std::sin(phase));
  });
}

Field factorization_rhs(const Field& z1, const Field& z2, const Field& z3,
                        double t) {
  Field m1 = fourier(chirp(z1, t, +1.0));
  Field m2 = fourier(chirp(z2, t, +1.0));
  Field m3 = fourier(chirp(z3, t, +1.0));
  Field prod = Field::pointwise(Field::pointwise(m1, m2.conj()), m3);
  Field back = inverse_fourier(prod);
  return Complex(1.0 / t, 0.0) * chirp(back, t, -1.0);
}

Field factorization_lhs(const Field& z1, const Field& z2, const Field& z3,
                        double t) {
  Field a = free_propagate(z1, t);
  Field b = free_propagate(z2, t);
  Field c = free_propagate(z3, t);
  return free_propagate(Field::pointwise(Field::pointwise(a, b.conj()), c),
                        -t);
}

}  // namespace

FactorizationCheck factorization_check(const Field& z1, const Field& z2,
                                       const Field& z3, double t,
                                       double t_min) {
  require_arg(std::abs(t) >= t_min,
              "factorization_check: |t| below t_min (t^-1 singularity)");
  require_same_grid(z1, z2, "factorization_check");
  require_same_grid(z1, z3, "factorization_check");
  FactorizationCheck out{factorization_lhs(z1, z2, z3, t),
                         factorization_rhs(z1, z2, z3, t), Complex(0.0, 0.0),
                         0.0};
  // Least squares over all samples: c = <rhs, lhs> / <rhs, rhs>.
  Complex num(0.0, 0.0);
  double den = 0.0;
  for (std::size_t j = 0; j < out.lhs.size(); ++j) {
    num += std::conj(out.rhs[j]) * out.lhs[j];
    den += std::norm(out.rhs[j]);
  }
  if (den > 0.0) out.fitted_c = num / den;
  double err2 = 0.0, ref2 = 0.0;
  for (std::size_t j = 0; j < out.lhs.size(); ++j) {
    err2 += std::norm(out.lhs[j] - out.fitted_c * out.rhs[j]);
    ref2 += std::norm(out.lhs[j]);
  }
  out.relative_error = ref2 > 0.0 ? std::sqrt(err2 / ref2) : 0.0;
  return out;
}

double factorization_residual(const Field& z1, const Field& z2,
                              const Field& z3, double t, Complex c,
                              double t_min) {
  require_arg(std::abs(t) >= t_min,
              "factorization_residual: |t| below t_min (t^-1 singularity)");
  Field lhs = factorization_lhs(z1, z2, z3, t);
  Field rhs = factorization_rhs(z1, z2, z3, t);
  double err2 = 0.0, ref2 = 0.0;
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    err2 += std::norm(lhs[j] - c * rhs[j]);
    ref2 += std::norm(lhs[j]);
  }
  return ref2 > 0.0 ? std::sqrt(err2 / ref2) : 0.0;
}

}  // namespace nlslab
