#ifndef NLSLAB_TRAJECTORY_HPP
#define NLSLAB_TRAJECTORY_HPP

#include <vector>

#include "nlslab/field.hpp"

namespace nlslab {

// An ordered set of time slices of a field over [T1, T2]: the discrete
// stand-in for u : I x R -> C. Times are strictly increasing, all slices
// share one grid, and there are at least 3 slices so interior time
// differencing is defined.
class SpaceTimeField {
public:
  SpaceTimeField(std::vector<double> times, std::vector<Field> slices);

  const GridSpec& grid() const noexcept { return slices_.front().grid(); }
  std::size_t num_slices() const noexcept { return times_.size(); }
  double t_begin() const noexcept { return times_.front(); }
  double t_end() const noexcept { return times_.back(); }
  const std::vector<double>& times() const noexcept { return times_; }
  double time(std::size_t i) const noexcept { return times_[i]; }
  const Field& slice(std::size_t i) const noexcept { return slices_[i]; }

  // Slice at time t: exact match within `tol`, else linear interpolation
  // between the bracketing slices. t must lie inside [T1, T2].
  Field at_time(double t, double tol = 1e-12) const;

  // Index of the slice at time t within tol, or npos.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find_time(double t, double tol = 1e-9) const;

  // New trajectory restricted to slice indices [i0, i1].
  SpaceTimeField sub_range(std::size_t i0, std::size_t i1) const;

  // Concatenation; `next` must start where this one ends (shared slice).
  SpaceTimeField concat(const SpaceTimeField& next, double tol = 1e-12) const;

  // Slice-wise map, preserving times.
  SpaceTimeField map_slices(const std::function<Field(double, const Field&)>& f) const;

  // Max over slices of boundary_mass_fraction.
  double max_boundary_mass_fraction() const;

private:
  std::vector<double> times_;
  std::vector<Field> slices_;
};

}  // namespace nlslab

#endif
