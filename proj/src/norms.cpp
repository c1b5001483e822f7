#include "nlslab/norms.hpp"

#include <algorithm>
#include <cmath>

namespace nlslab {

double conjugate_exponent(double a) {
  require_arg(a > 1.0 && std::isfinite(a), "conjugate_exponent: requires a > 1");
  return a / (a - 1.0);
}

Rat conjugate_exponent(const Rat& a) {
  require_arg(a > Rat(1), "conjugate_exponent: requires a > 1");
  return a / (a - Rat(1));
}

double q_exponent(double p, double r) {
  require_arg(p >= 1.0 && std::isfinite(p), "q_exponent: requires p >= 1");
  require_arg(r >= 2.0 && std::isfinite(r), "q_exponent: requires r >= 2");
  const double denom = 1.0 - 1.0 / p - 1.0 / r;
  require(denom > 0.0, ErrorCode::degenerate_exponent,
          "q_exponent: 1 - 1/p - 1/r must be positive");
  return 2.0 / denom;
}

Rat q_exponent(const Rat& p, const Rat& r) {
  require_arg(p >= Rat(1), "q_exponent: requires p >= 1");
  require_arg(r >= Rat(2), "q_exponent: requires r >= 2");
  const Rat denom = Rat(1) - Rat(1) / p - Rat(1) / r;
  require(denom > Rat(0), ErrorCode::degenerate_exponent,
          "q_exponent: 1 - 1/p - 1/r must be positive");
  return Rat(2) / denom;
}

bool admissibility_window(const Rat& p, const Rat& r) {
  require_arg(p >= Rat(2) && p < Rat(4), "admissibility_window: 2 <= p < 4");
  require_arg(r >= Rat(2), "admissibility_window: r >= 2");
  const Rat inv_q = (Rat(1) - Rat(1) / p - Rat(1) / r) / Rat(2);
  const Rat cap = std::min(Rat(1, 4), Rat(1, 2) - Rat(1) / r);
  return inv_q > Rat(0) && inv_q < cap;
}

bool admissibility_window(double p, double r) {
  require_arg(p >= 2.0 && p < 4.0, "admissibility_window: 2 <= p < 4");
  require_arg(r >= 2.0, "admissibility_window: r >= 2");
  const double inv_q = (1.0 - 1.0 / p - 1.0 / r) / 2.0;
  const double cap = std::min(0.25, 0.5 - 1.0 / r);
  // Snap to the boundary so borderline pairs match the exact arithmetic:
  // the window is open, so values on (or within round-off of) an endpoint
  // are outside it.
  const double eps = 1e-12;
  if (inv_q <= eps) return false;
  if (inv_q >= cap - eps) return false;
  return true;
}

// --- Mixed space-time norms -------------------------------------------

namespace {

// Composite trapezoid of per-slice values g_i over the trajectory mesh.
double trapezoid(const std::vector<double>& t, const std::vector<double>& g,
                 std::size_t i_begin = 0) {
  double s = 0.0;
  for (std::size_t i = i_begin + 1; i < t.size(); ++i)
    s += 0.5 * (g[i] + g[i - 1]) * (t[i] - t[i - 1]);
  return s;
}

}  // namespace

double mixed_norm(const SpaceTimeField& u, double q, double r) {
  require_arg(r >= 1.0 && std::isfinite(r), "mixed_norm: requires r >= 1");
  require_arg(q >= 1.0, "mixed_norm: requires q >= 1");
  std::vector<double> slice_norms(u.num_slices());
  for (std::size_t i = 0; i < u.num_slices(); ++i)
    slice_norms[i] = lp_norm(u.slice(i), r);
  if (q == infinity)
    return *std::max_element(slice_norms.begin(), slice_norms.end());
  std::vector<double> g(u.num_slices());
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = std::pow(slice_norms[i], q);
  return std::pow(trapezoid(u.times(), g), 1.0 / q);
}

WeightedNormResult weighted_mixed_norm(const SpaceTimeField& u, double rho,
                                       double alpha, double r) {
  require_arg(rho >= 1.0 && std::isfinite(rho),
              "weighted_mixed_norm: requires rho >= 1");
  require_arg(r >= 1.0 && std::isfinite(r),
              "weighted_mixed_norm: requires r >= 1");
  require_arg(u.t_begin() >= 0.0,
              "weighted_mixed_norm: interval must lie in [0, inf)");
  WeightedNormResult out;
  std::size_t i0 = 0;
  if (u.t_begin() == 0.0 && alpha < 0.0) {
    require_arg(alpha > -1.0,
                "weighted_mixed_norm: interval touches 0 with alpha <= -1");
    i0 = 1;  // weight singular at 0: start at first positive mesh point
    out.truncated_at_zero = true;
  }
  std::vector<double> g(u.num_slices(), 0.0);
  for (std::size_t i = i0; i < u.num_slices(); ++i) {
    const double t = u.time(i);
    const double w = (alpha == 0.0) ? 1.0 : std::pow(t, alpha);
    g[i] = std::pow(lp_norm(u.slice(i), r), rho) * w;
  }
  out.value = std::pow(trapezoid(u.times(), g, i0), 1.0 / rho);
  return out;
}

SpaceTimeField twist(const SpaceTimeField& u) {
  return u.map_slices(
      [](double t, const Field& s) { return free_propagate(s, -t); });
}

SpaceTimeField untwist(const SpaceTimeField& v) {
  return v.map_slices(
      [](double t, const Field& s) { return free_propagate(s, t); });
}

// --- X / Y (semi)norms --------------------------------------------------

namespace {

// Second-order three-point derivative weights at t1 given neighbors
// (t0, t1, t2); interior = centered, endpoints = one-sided.
struct DiffWeights {
  double w0, w1, w2;
};

DiffWeights interior_weights(double h1, double h2) {
  return {-h2 / (h1 * (h1 + h2)), (h2 - h1) / (h1 * h2),
          h1 / (h2 * (h1 + h2))};
}

DiffWeights left_edge_weights(double h1, double h2) {
  return {-(2.0 * h1 + h2) / (h1 * (h1 + h2)), (h1 + h2) / (h1 * h2),
          -h1 / (h2 * (h1 + h2))};
}

// Per-slice ||d_s v||_p along the trajectory.
std::vector<double> time_derivative_norms(const SpaceTimeField& v, double p) {
  const std::size_t m = v.num_slices();
  std::vector<double> out(m);
  auto combine = [&](std::size_t a, std::size_t b, std::size_t c,
                     DiffWeights w) {
    std::vector<Complex> d(v.grid().n_points());
    const Field& fa = v.slice(a);
    const Field& fb = v.slice(b);
    const Field& fc = v.slice(c);
    for (std::size_t j = 0; j < d.size(); ++j)
      d[j] = w.w0 * fa[j] + w.w1 * fb[j] + w.w2 * fc[j];
    return lp_norm(Field(v.grid(), std::move(d)), p);
  };
  {  // left endpoint
    const double h1 = v.time(1) - v.time(0);
    const double h2 = v.time(2) - v.time(1);
    out[0] = combine(0, 1, 2, left_edge_weights(h1, h2));
  }
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double h1 = v.time(i) - v.time(i - 1);
    const double h2 = v.time(i + 1) - v.time(i);
    out[i] = combine(i - 1, i, i + 1, interior_weights(h1, h2));
  }
  {  // right endpoint: mirror of the left one-sided formula
    const double h1 = v.time(m - 1) - v.time(m - 2);
    const double h2 = v.time(m - 2) - v.time(m - 3);
    DiffWeights w = left_edge_weights(h1, h2);
    std::vector<Complex> d(v.grid().n_points());
    const Field& fa = v.slice(m - 1);
    const Field& fb = v.slice(m - 2);
    const Field& fc = v.slice(m - 3);
    for (std::size_t j = 0; j < d.size(); ++j)
      d[j] = -(w.w0 * fa[j] + w.w1 * fb[j] + w.w2 * fc[j]);
    out[m - 1] = lp_norm(Field(v.grid(), std::move(d)), p);
  }
  return out;
}

}  // namespace

double x_seminorm(const SpaceTimeField& v, double p, double q, double theta) {
  require_arg(v.num_slices() >= 3, "x_seminorm: need at least 3 slices");
  require_arg(p >= 1.0, "x_seminorm: requires p >= 1");
  require_arg(q >= 1.0 && std::isfinite(q), "x_seminorm: requires 1 <= q < inf");
  if (v.t_begin() == 0.0 && theta < 0.0) {
    // q' theta > -1 needed for the weight to be integrable at 0
    // (q' = inf when q = 1, so any theta < 0 fails there).
    const bool ok = (q > 1.0) && (conjugate_exponent(q) * theta > -1.0);
    require_arg(ok, "x_seminorm: q'*theta <= -1 with interval touching 0");
  }
  std::vector<double> dn = time_derivative_norms(v, p);
  std::vector<double> g(dn.size());
  for (std::size_t i = 0; i < dn.size(); ++i) {
    const double s = v.time(i);
    const double w = (theta == 0.0) ? 1.0 : std::pow(s, theta);
    g[i] = std::pow(w * dn[i], q);
  }
  // Weight singular at s=0: drop the first node as in weighted_mixed_norm.
  std::size_t i0 = (v.t_begin() == 0.0 && theta < 0.0) ? 1 : 0;
  double integral = 0.0;
  for (std::size_t i = i0 + 1; i < g.size(); ++i)
    integral += 0.5 * (g[i] + g[i - 1]) * (v.time(i) - v.time(i - 1));
  return std::pow(integral, 1.0 / q);
}

double x_norm(const SpaceTimeField& v, double p, double q, double theta) {
  return lp_norm(v.slice(0), p) + x_seminorm(v, p, q, theta);
}

double y_seminorm(const SpaceTimeField& u, double p, double q, double theta) {
  return x_seminorm(twist(u), p, q, theta);
}

double y_norm(const SpaceTimeField& u, double p, double q, double theta) {
  return x_norm(twist(u), p, q, theta);
}

}  // namespace nlslab
