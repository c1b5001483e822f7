#ifndef NLSLAB_FIELD_HPP
#define NLSLAB_FIELD_HPP

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "nlslab/grid.hpp"

namespace nlslab {

using Complex = std::complex<double>;

// A complex-valued sample vector on a GridSpec. Fields are value types;
// every public operation returns a new Field and leaves its inputs alone.
class Field {
public:
  Field(GridSpec grid, std::vector<Complex> samples);

  // Zero field.
  explicit Field(GridSpec grid);

  static Field from_function(const GridSpec& grid,
                             const std::function<Complex(double)>& f);

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const std::vector<Complex>& samples() const noexcept { return samples_; }
  const Complex& operator[](std::size_t j) const noexcept {
    return samples_[j];
  }

  // Throws if any sample is non-finite. Called by every public operation
  // that can overflow.
  void check_finite(const char* context) const;

  double max_abs() const;

  Field conj() const;

  friend Field operator+(const Field& a, const Field& b);
  friend Field operator-(const Field& a, const Field& b);
  friend Field operator*(Complex c, const Field& f);

  // Pointwise product a * b (same grid).
  static Field pointwise(const Field& a, const Field& b);

  // Pointwise map.
  Field map(const std::function<Complex(Complex)>& f) const;
  Field map_with_x(const std::function<Complex(double, Complex)>& f) const;

  // Maximum pointwise |a - b|.
  static double max_abs_diff(const Field& a, const Field& b);

private:
  GridSpec grid_;
  std::vector<Complex> samples_;
};

void require_same_grid(const Field& a, const Field& b, const char* context);

}  // namespace nlslab

#endif
