#include "nlslab/initial_data.hpp"

#include <cmath>
#include <numbers>

#include "nlslab/spectral.hpp"

namespace nlslab {

Field gaussian_data(const GridSpec& grid, double a) {
  require_arg(a > 0.0, "gaussian_data: requires a > 0");
  return Field::from_function(
      grid, [a](double x) { return Complex(std::exp(-a * x * x), 0.0); });
}

Field soliton_data(const GridSpec& grid) {
  const double amp = std::sqrt(2.0);
  return Field::from_function(grid, [amp](double x) {
    return Complex(amp / std::cosh(x), 0.0);
  });
}

double plateau_cutoff(double x, double half_width) {
  const double a = 0.5 * half_width;   // flat out to here
  const double b = 0.75 * half_width;  // zero beyond here
  const double r = std::abs(x);
  if (r <= a) return 1.0;
  if (r >= b) return 0.0;
  // C-infinity bump transition exp(-1/s)/(exp(-1/s)+exp(-1/(1-s))).
  const double s = (r - a) / (b - a);
  const double e0 = std::exp(-1.0 / (1.0 - s));
  const double e1 = std::exp(-1.0 / s);
  return e0 / (e0 + e1);
}

Field power_law_data(const GridSpec& grid, double beta, double amplitude) {
  require_arg(beta > 0.0 && beta < 1.0, "power_law_data: beta in (0,1)");
  const double half_width = grid.half_width();
  return Field::from_function(grid, [=](double x) {
    const double v =
        amplitude * std::pow(1.0 + std::abs(x), -beta) *
        plateau_cutoff(x, half_width);
    return Complex(v, 0.0);
  });
}

namespace {

// splitmix64: tiny, platform-independent generator.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() {  // in (0, 1)
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }
  Complex normal_pair() {  // Box-Muller
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return Complex(r * std::cos(a), r * std::sin(a));
  }
};

}  // namespace

Field random_smooth_data(const GridSpec& grid, std::uint64_t seed,
                         double x_width, double band) {
  require_arg(x_width > 0.0 && band > 0.0,
              "random_smooth_data: widths must be positive");
  SplitMix64 rng(seed);
  const std::size_t n = grid.n_points();
  std::vector<Complex> hat(n);
  // Draw coefficients in signed-mode order (0, +1, -1, +2, -2, ...) so
  // the same seed samples the same continuum field on a refined grid
  // with the same half-width.
  const double xi_cap = 4.0 * band;
  const auto k_max = std::min<long long>(
      static_cast<long long>(n) / 2 - 1,
      static_cast<long long>(std::ceil(xi_cap / grid.dxi())));
  for (long long k = 0; k <= k_max; ++k) {
    for (int sgn : {+1, -1}) {
      if (k == 0 && sgn < 0) continue;
      const long long mode = sgn * k;
      const Complex draw = rng.normal_pair();
      const double xi = static_cast<double>(mode) * grid.dxi();
      const double envelope = std::exp(-(xi * xi) / (band * band));
      const std::size_t bin =
          mode >= 0 ? static_cast<std::size_t>(mode)
                    : n - static_cast<std::size_t>(-mode);
      hat[bin] = envelope * draw;
    }
  }
  Field spatial = inverse_fourier(Field(grid, std::move(hat)));
  Field shaped = spatial.map_with_x([&](double x, Complex z) {
    return z * std::exp(-(x * x) / (x_width * x_width));
  });
  const double norm = lp_norm(shaped, 2.0);
  require_arg(norm > 0.0, "random_smooth_data: degenerate draw");
  return Complex(1.0 / norm, 0.0) * shaped;
}

Field indicator_data(const GridSpec& grid, double a, double b) {
  require_arg(a < b, "indicator_data: requires a < b");
  const std::size_t ja = grid.snap_index(a);
  const std::size_t jb = grid.snap_index(b);
  std::vector<Complex> s(grid.n_points());
  for (std::size_t j = ja; j < jb; ++j) s[j] = Complex(1.0, 0.0);
  return Field(grid, std::move(s));
}

Field single_mode_data(const GridSpec& grid, std::size_t bin) {
  require_arg(bin < grid.n_points(), "single_mode_data: bin out of range");
  const double xi = grid.xi(bin);
  return Field::from_function(grid, [xi](double x) {
    return Complex(std::cos(xi * x), std::sin(xi * x));
  });
}

}  // namespace nlslab
