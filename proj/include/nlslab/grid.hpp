#ifndef NLSLAB_GRID_HPP
#define NLSLAB_GRID_HPP

#include <cstddef>
#include <vector>

#include "nlslab/errors.hpp"

namespace nlslab {

// Uniform periodic grid on [-L, L). Spatial step dx = 2L/n. The angular
// wavenumbers are xi_k = pi*k/L for k in {-n/2, ..., n/2-1}, stored in
// FFT order (k = 0,1,...,n/2-1, -n/2, ..., -1).
//
// Repo-wide Fourier convention (all analytic oracles are derived under it):
//   (F f)(xi)      = (2*pi)^(-1/2) * Integral f(x) exp(-i*xi*x) dx
//   (F^-1 g)(x)    = (2*pi)^(-1/2) * Integral g(xi) exp(+i*xi*x) dxi
// The transform is unitary: Plancherel holds with spectral measure dxi.
class GridSpec {
public:
  GridSpec(std::size_t n_points, double half_width);

  std::size_t n_points() const noexcept { return n_; }
  double half_width() const noexcept { return half_width_; }
  double dx() const noexcept { return dx_; }
  double dxi() const noexcept { return dxi_; }

  // Sample location x_j = -L + j*dx.
  double x(std::size_t j) const noexcept {
    return -half_width_ + static_cast<double>(j) * dx_;
  }
  // Angular wavenumber of spectral bin j (FFT order).
  double xi(std::size_t j) const noexcept {
    const auto n = static_cast<long long>(n_);
    auto k = static_cast<long long>(j);
    if (k >= n / 2) k -= n;
    return static_cast<double>(k) * dxi_;
  }

  std::vector<double> xs() const;
  std::vector<double> xis() const;

  // Nearest grid index for a point in [-L, L).
  std::size_t snap_index(double x) const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) noexcept {
    return a.n_ == b.n_ && a.half_width_ == b.half_width_;
  }

private:
  std::size_t n_;
  double half_width_;
  double dx_;
  double dxi_;
};

}  // namespace nlslab

#endif
