#ifndef NLSLAB_NORMS_HPP
#define NLSLAB_NORMS_HPP

#include <limits>
#include <optional>

#include "nlslab/rational.hpp"
#include "nlslab/spectral.hpp"
#include "nlslab/trajectory.hpp"

namespace nlslab {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

// Conjugate exponent: 1/a + 1/a' = 1. Requires a > 1.
double conjugate_exponent(double a);
Rat conjugate_exponent(const Rat& a);

// Q_p(r) defined by 2/Q_p(r) + 1/r = 1 - 1/p. Requires p >= 1, r >= 2 and
// 1 - 1/p - 1/r > 0 (degenerate denominators are a distinct error).
double q_exponent(double p, double r);
Rat q_exponent(const Rat& p, const Rat& r);

// True iff 0 < 1/Q_p(r) < min(1/4, 1/2 - 1/r). Requires 2 <= p < 4, r >= 2.
// The double overload snaps values within 1e-12 of a boundary onto it, so
// borderline pairs like (3,6) evaluate as the exact arithmetic does.
bool admissibility_window(double p, double r);
bool admissibility_window(const Rat& p, const Rat& r);

// The scalar exponents that travel together through an experiment.
struct ExponentSet {
  double p = 2.0;
  double p0 = 3.0;
  double q = 2.0;
  double r = 2.0;
  double theta = 0.0;
  double alpha = 0.0;
  double rho = 2.0;
  double gamma = 0.0;
  double sigma = 0.0;

  double q_prime() const { return conjugate_exponent(q); }
  double q_of(double pp, double rr) const { return q_exponent(pp, rr); }
};

// (Integral_I ||u(t)||_r^q dt)^(1/q) by composite trapezoid on the
// trajectory's own time mesh; q = infinity takes the max over slices.
double mixed_norm(const SpaceTimeField& u, double q, double r);

struct WeightedNormResult {
  double value = 0.0;
  // True when the interval touched t=0 with a singular weight and the
  // first mesh point was dropped from the quadrature.
  bool truncated_at_zero = false;
};

// (Integral_I ||u(t)||_r^rho t^alpha dt)^(1/rho). Intervals touching 0
// with alpha <= -1 are rejected; with -1 < alpha < 0 the quadrature starts
// at the first positive mesh point and the result is flagged.
WeightedNormResult weighted_mixed_norm(const SpaceTimeField& u, double rho,
                                       double alpha, double r);

// Twisted variable: slice-wise U(-t) u(t). untwist applies U(+t).
SpaceTimeField twist(const SpaceTimeField& u);
SpaceTimeField untwist(const SpaceTimeField& v);

// ( Integral (s^theta ||d_s v(s)||_p)^q ds )^(1/q) with d_s by
// second-order centered differences (one-sided second-order at the
// endpoints) and trapezoid quadrature. Requires >= 3 slices, and
// q'*theta > -1 when T1 = 0.
double x_seminorm(const SpaceTimeField& v, double p, double q, double theta = 0.0);

// ||v(T1)||_p + x_seminorm(v).
double x_norm(const SpaceTimeField& v, double p, double q, double theta = 0.0);

// X-norms of the twisted variable.
double y_seminorm(const SpaceTimeField& u, double p, double q, double theta = 0.0);
double y_norm(const SpaceTimeField& u, double p, double q, double theta = 0.0);

}  // namespace nlslab

#endif
