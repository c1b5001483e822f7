#include "nlslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace nlslab {

// --- GridSpec ---------------------------------------------------------

GridSpec::GridSpec(std::size_t n_points, double half_width)
    : n_(n_points), half_width_(half_width) {
  require_arg(n_points >= 4, "GridSpec: n_points must be >= 4");
  require_arg((n_points & (n_points - 1)) == 0,
              "GridSpec: n_points must be a power of two");
  require_arg(half_width > 0.0 && std::isfinite(half_width),
              "GridSpec: half_width must be positive and finite");
  dx_ = 2.0 * half_width_ / static_cast<double>(n_);
  dxi_ = std::numbers::pi / half_width_;
}

std::vector<double> GridSpec::xs() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = x(j);
  return out;
}

std::vector<double> GridSpec::xis() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = xi(j);
  return out;
}

std::size_t GridSpec::snap_index(double x) const {
  require_arg(x >= -half_width_ && x < half_width_,
              "GridSpec::snap_index: point outside [-L, L)");
  double j = (x + half_width_) / dx_;
  auto idx = static_cast<long long>(std::llround(j));
  idx = std::clamp<long long>(idx, 0, static_cast<long long>(n_) - 1);
  return static_cast<std::size_t>(idx);
}

// --- Field ------------------------------------------------------------

Field::Field(GridSpec grid, std::vector<Complex> samples)
    : grid_(grid), samples_(std::move(samples)) {
  require_arg(samples_.size() == grid_.n_points(),
              "Field: sample count does not match grid");
}

Field::Field(GridSpec grid) : grid_(grid), samples_(grid.n_points()) {}

Field Field::from_function(const GridSpec& grid,
                           const std::function<Complex(double)>& f) {
  std::vector<Complex> s(grid.n_points());
  for (std::size_t j = 0; j < grid.n_points(); ++j) s[j] = f(grid.x(j));
  return Field(grid, std::move(s));
}

void Field::check_finite(const char* context) const {
  for (const auto& z : samples_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      fail(ErrorCode::internal,
           std::string(context) + ": non-finite sample produced");
    }
  }
}

double Field::max_abs() const {
  double m = 0.0;
  for (const auto& z : samples_) m = std::max(m, std::abs(z));
  return m;
}

Field Field::conj() const {
  std::vector<Complex> s(samples_.size());
  for (std::size_t j = 0; j < samples_.size(); ++j) s[j] = std::conj(samples_[j]);
  return Field(grid_, std::move(s));
}

Field operator+(const Field& a, const Field& b) {
  require_same_grid(a, b, "Field +");
  std::vector<Complex> s(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) s[j] = a[j] + b[j];
  return Field(a.grid(), std::move(s));
}

Field operator-(const Field& a, const Field& b) {
  require_same_grid(a, b, "Field -");
  std::vector<Complex> s(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) s[j] = a[j] - b[j];
  return Field(a.grid(), std::move(s));
}

Field operator*(Complex c, const Field& f) {
  std::vector<Complex> s(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) s[j] = c * f[j];
  return Field(f.grid(), std::move(s));
}

Field Field::pointwise(const Field& a, const Field& b) {
  require_same_grid(a, b, "Field::pointwise");
  std::vector<Complex> s(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) s[j] = a[j] * b[j];
  return Field(a.grid(), std::move(s));
}

Field Field::map(const std::function<Complex(Complex)>& f) const {
  std::vector<Complex> s(samples_.size());
  for (std::size_t j = 0; j < samples_.size(); ++j) s[j] = f(samples_[j]);
  return Field(grid_, std::move(s));
}

Field Field::map_with_x(const std::function<Complex(double, Complex)>& f) const {
  std::vector<Complex> s(samples_.size());
  for (std::size_t j = 0; j < samples_.size(); ++j)
    s[j] = f(grid_.x(j), samples_[j]);
  return Field(grid_, std::move(s));
}

double Field::max_abs_diff(const Field& a, const Field& b) {
  require_same_grid(a, b, "Field::max_abs_diff");
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

void require_same_grid(const Field& a, const Field& b, const char* context) {
  require_arg(a.grid() == b.grid(),
              std::string(context) + ": fields live on different grids");
}

// --- Transforms -------------------------------------------------------

namespace {

// Forward: F(xi_k) = dx/sqrt(2 pi) * (-1)^k * DFT_k, which is the
// trapezoid discretization of the continuum transform with x_0 = -L.
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

}  // namespace

Field fourier(const Field& f) {
  const auto n = f.size();
  std::vector<Complex> out(n);
  detail::dft_forward(f.samples().data(), out.data(), n);
  const double scale = f.grid().dx() * kInvSqrt2Pi;
  for (std::size_t k = 0; k < n; ++k) {
    const double sign = (k & 1) ? -1.0 : 1.0;
    out[k] *= sign * scale;
  }
  Field result(f.grid(), std::move(out));
  result.check_finite("fourier");
  return result;
}

Field inverse_fourier(const Field& g) {
  const auto n = g.size();
  std::vector<Complex> in(n);
  const double scale = 1.0 / (g.grid().dx() * kInvSqrt2Pi);
  for (std::size_t k = 0; k < n; ++k) {
    const double sign = (k & 1) ? -1.0 : 1.0;
    in[k] = g[k] * (sign * scale / static_cast<double>(n));
  }
  std::vector<Complex> out(n);
  detail::dft_backward(in.data(), out.data(), n);
  Field result(g.grid(), std::move(out));
  result.check_finite("inverse_fourier");
  return result;
}

Field free_propagate(const Field& f, double t) {
  require_arg(std::isfinite(t), "free_propagate: t must be finite");
  const auto n = f.size();
  std::vector<Complex> hat(n);
  detail::dft_forward(f.samples().data(), hat.data(), n);
  const GridSpec& g = f.grid();
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = g.xi(k);
    const double phase = -t * xi * xi;
    hat[k] *= Complex(std::cos(phase), std::sin(phase)) /
              static_cast<double>(n);
  }
  std::vector<Complex> out(n);
  detail::dft_backward(hat.data(), out.data(), n);
  Field result(g, std::move(out));
  result.check_finite("free_propagate");
  return result;
}

double lp_norm(const Field& f, double p) {
  require_arg(p >= 1.0 && std::isfinite(p), "lp_norm: requires 1 <= p < inf");
  const double dx = f.grid().dx();
  if (p == 2.0) {  // common case, avoid pow
    double s = 0.0;
    for (const auto& z : f.samples()) s += std::norm(z);
    return std::sqrt(s * dx);
  }
  double s = 0.0;
  for (const auto& z : f.samples()) {
    const double a = std::abs(z);
    if (a > 0.0) s += std::pow(a, p);
  }
  return std::pow(s * dx, 1.0 / p);
}

double fourier_lp_norm(const Field& f, double p) {
  require_arg(p >= 1.0 && std::isfinite(p),
              "fourier_lp_norm: requires 1 <= p < inf");
  Field hat = fourier(f);
  const double dxi = f.grid().dxi();
  if (p == 2.0) {
    double s = 0.0;
    for (const auto& z : hat.samples()) s += std::norm(z);
    return std::sqrt(s * dxi);
  }
  double s = 0.0;
  for (const auto& z : hat.samples()) {
    const double a = std::abs(z);
    if (a > 0.0) s += std::pow(a, p);
  }
  return std::pow(s * dxi, 1.0 / p);
}

double boundary_mass_fraction(const Field& f) {
  const GridSpec& g = f.grid();
  const double band = 0.75 * g.half_width();
  double total = 0.0, near = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double m = std::norm(f[j]);
    total += m;
    if (std::abs(g.x(j)) > band) near += m;
  }
  return total > 0.0 ? near / total : 0.0;
}

}  // namespace nlslab
