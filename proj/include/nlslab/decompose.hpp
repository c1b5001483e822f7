#ifndef NLSLAB_DECOMPOSE_HPP
#define NLSLAB_DECOMPOSE_HPP

#include <utility>

#include "nlslab/norms.hpp"

namespace nlslab {

// Height truncation at level lambda: the tall part f*1{|f|>lambda} carries
// the L2 budget, the short part f*1{|f|<=lambda} the L^p0 budget. Each
// sample goes to exactly one part, so tall + short == f bitwise.
struct HeightSplit {
  Field tall;
  Field short_part;
};
HeightSplit height_split(const Field& f, double lambda);

// Smallest lambda (ties toward smaller lambda) with ||tall(lambda)||_2 as
// close to `target` as the grid allows. Bisection with <= 200 iterations;
// tolerance 1e-10 * ||f||_2 on the interval width. Targets outside
// (0, ||f||_2] are a distinct error.
double choose_cut(const Field& f, double target);

// One member of the N-indexed family: f = phi_n + psi_n with
// ||phi_n||_2 steered to N^alpha and the norm budget recorded.
struct DecompositionPair {
  Field phi_n;        // L2 part (tall)
  Field psi_n;        // L^p0 part (short)
  double n = 0.0;     // index N > 1
  double alpha = 0.0;
  double p0 = 0.0;
  double lambda = 0.0;    // cut level used
  double phi_l2 = 0.0;    // achieved ||phi_n||_2
  double psi_lp0 = 0.0;   // achieved ||psi_n||_p0
  // Smallest C0 with ||phi_n||_2 <= C0*N^alpha and ||psi_n||_p0 <= C0/N.
  double c0_fit = 0.0;
};

// Splits f at the level where the tall part's L2 norm equals
// scale * N^alpha (capped at ||f||_2, in which case psi_n = 0).
DecompositionPair d_class_decompose(const Field& f, double p0, double alpha,
                                    double n, double scale = 1.0);

// Interpolation parameter for a target Lebesgue index:
// 1/p_theta = (1-theta)/p0 + theta/2, alpha = (1-theta)/theta.
struct ThetaParams {
  double theta = 0.0;
  double p_theta = 0.0;
  double p0 = 0.0;
  double alpha = 0.0;
};
ThetaParams theta_from_target(double p, double p0);

struct ThetaParamsExact {
  Rat theta;
  Rat p_theta;
  Rat p0;
  Rat alpha;
};
ThetaParamsExact theta_from_target(const Rat& p, const Rat& p0);

// Evaluates p_theta from theta (inverse of theta_from_target).
double p_theta_of(double theta, double p0);

}  // namespace nlslab

#endif
