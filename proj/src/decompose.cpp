#include "nlslab/decompose.hpp"

#include <algorithm>
#include <cmath>

namespace nlslab {

HeightSplit height_split(const Field& f, double lambda) {
  require_arg(lambda >= 0.0 && std::isfinite(lambda),
              "height_split: lambda must be >= 0");
  std::vector<Complex> tall(f.size()), short_part(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (std::abs(f[j]) > lambda) {
      tall[j] = f[j];
    } else {
      short_part[j] = f[j];
    }
  }
  return {Field(f.grid(), std::move(tall)), Field(f.grid(), std::move(short_part))};
}

namespace {

double tall_l2(const Field& f, double lambda) {
  const double dx = f.grid().dx();
  double s = 0.0;
  for (const auto& z : f.samples()) {
    const double m = std::norm(z);
    if (std::sqrt(m) > lambda) s += m;
  }
  return std::sqrt(s * dx);
}

}  // namespace

double choose_cut(const Field& f, double target) {
  const double total = lp_norm(f, 2.0);
  require(target > 0.0 && target <= total * (1.0 + 1e-12),
          ErrorCode::cut_unreachable,
          "choose_cut: target outside (0, ||f||_2]");
  if (target >= total) return 0.0;

  // ||tall(lambda)||_2 is nonincreasing in lambda and piecewise constant
  // on a grid; bisection shrinks the bracket through any plateau, and the
  // smaller end is returned on ties.
  double lo = 0.0, hi = f.max_abs();
  const double tol = 1e-10 * total;
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tall_l2(f, mid) >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (std::abs(tall_l2(f, lo) - target) <= tol) break;
  }
  // Pick whichever end of the bracket lands closer to the target,
  // preferring the smaller lambda on a tie.
  const double err_lo = std::abs(tall_l2(f, lo) - target);
  const double err_hi = std::abs(tall_l2(f, hi) - target);
  return err_lo <= err_hi ? lo : hi;
}

DecompositionPair d_class_decompose(const Field& f, double p0, double alpha,
                                    double n, double scale) {
  require_arg(n > 1.0, "d_class_decompose: requires n > 1");
  require_arg(p0 >= 1.0, "d_class_decompose: requires p0 >= 1");
  require_arg(scale > 0.0, "d_class_decompose: requires scale > 0");
  const double total = lp_norm(f, 2.0);
  const double target = std::min(scale * std::pow(n, alpha), total);
  const double lambda = (target >= total) ? 0.0 : choose_cut(f, target);
  HeightSplit hs = height_split(f, lambda);

  const double phi_l2 = lp_norm(hs.tall, 2.0);
  const double psi_lp0 = lp_norm(hs.short_part, p0);
  const double c0_fit =
      std::max(phi_l2 / std::pow(n, alpha), n * psi_lp0);
  return DecompositionPair{std::move(hs.tall), std::move(hs.short_part),
                           n,     alpha,       p0,
                           lambda, phi_l2,     psi_lp0,
                           c0_fit};
}

ThetaParams theta_from_target(double p, double p0) {
  require_arg(p0 > 2.0, "theta_from_target: requires p0 > 2");
  require_arg(p > 2.0 && p < p0,
              "theta_from_target: requires p in the open interval (2, p0)");
  ThetaParams out;
  out.p0 = p0;
  out.theta = (1.0 / p - 1.0 / p0) / (0.5 - 1.0 / p0);
  out.p_theta = p;
  out.alpha = (1.0 - out.theta) / out.theta;
  return out;
}

ThetaParamsExact theta_from_target(const Rat& p, const Rat& p0) {
  require_arg(p0 > Rat(2), "theta_from_target: requires p0 > 2");
  require_arg(p > Rat(2) && p < p0,
              "theta_from_target: requires p in the open interval (2, p0)");
  ThetaParamsExact out;
  out.p0 = p0;
  out.theta = (Rat(1) / p - Rat(1) / p0) / (Rat(1, 2) - Rat(1) / p0);
  out.p_theta = p;
  out.alpha = (Rat(1) - out.theta) / out.theta;
  return out;
}

double p_theta_of(double theta, double p0) {
  require_arg(theta > 0.0 && theta < 1.0, "p_theta_of: theta in (0,1)");
  require_arg(p0 > 2.0, "p_theta_of: requires p0 > 2");
  return 1.0 / ((1.0 - theta) / p0 + theta / 2.0);
}

}  // namespace nlslab
