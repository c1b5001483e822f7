#include "nlslab/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "nlslab/spectral.hpp"

namespace nlslab {

SpaceTimeField::SpaceTimeField(std::vector<double> times,
                               std::vector<Field> slices)
    : times_(std::move(times)), slices_(std::move(slices)) {
  require_arg(times_.size() >= 3,
              "SpaceTimeField: need at least 3 time points");
  require_arg(times_.size() == slices_.size(),
              "SpaceTimeField: times/slices length mismatch");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    require_arg(times_[i] > times_[i - 1],
                "SpaceTimeField: times must be strictly increasing");
  }
  for (const auto& s : slices_) {
    require_arg(s.grid() == slices_.front().grid(),
                "SpaceTimeField: slices must share one grid");
  }
}

Field SpaceTimeField::at_time(double t, double tol) const {
  require_arg(t >= times_.front() - tol && t <= times_.back() + tol,
              "SpaceTimeField::at_time: t outside trajectory interval");
  t = std::clamp(t, times_.front(), times_.back());
  auto it = std::lower_bound(times_.begin(), times_.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - times_.begin());
  if (hi < times_.size() && std::abs(times_[hi] - t) <= tol)
    return slices_[hi];
  if (hi > 0 && std::abs(times_[hi - 1] - t) <= tol) return slices_[hi - 1];
  // Linear interpolation between bracketing slices.
  std::size_t lo = hi - 1;
  const double h = times_[hi] - times_[lo];
  const double w = (t - times_[lo]) / h;
  std::vector<Complex> s(slices_[lo].size());
  for (std::size_t j = 0; j < s.size(); ++j)
    s[j] = (1.0 - w) * slices_[lo][j] + w * slices_[hi][j];
  return Field(grid(), std::move(s));
}

std::size_t SpaceTimeField::find_time(double t, double tol) const {
  auto it = std::lower_bound(times_.begin(), times_.end(), t - tol);
  if (it == times_.end()) return npos;
  std::size_t i = static_cast<std::size_t>(it - times_.begin());
  if (std::abs(times_[i] - t) <= tol) return i;
  return npos;
}

SpaceTimeField SpaceTimeField::sub_range(std::size_t i0, std::size_t i1) const {
  require_arg(i0 < i1 && i1 < times_.size() && i1 - i0 + 1 >= 3,
              "SpaceTimeField::sub_range: invalid index range");
  std::vector<double> t(times_.begin() + i0, times_.begin() + i1 + 1);
  std::vector<Field> s(slices_.begin() + i0, slices_.begin() + i1 + 1);
  return SpaceTimeField(std::move(t), std::move(s));
}

SpaceTimeField SpaceTimeField::concat(const SpaceTimeField& next,
                                      double tol) const {
  require_arg(std::abs(next.t_begin() - t_end()) <= tol,
              "SpaceTimeField::concat: trajectories do not share an endpoint");
  std::vector<double> t(times_);
  std::vector<Field> s(slices_);
  for (std::size_t i = 1; i < next.num_slices(); ++i) {
    t.push_back(next.times_[i]);
    s.push_back(next.slices_[i]);
  }
  return SpaceTimeField(std::move(t), std::move(s));
}

SpaceTimeField SpaceTimeField::map_slices(
    const std::function<Field(double, const Field&)>& f) const {
  std::vector<Field> s;
  s.reserve(slices_.size());
  for (std::size_t i = 0; i < slices_.size(); ++i)
    s.push_back(f(times_[i], slices_[i]));
  return SpaceTimeField(times_, std::move(s));
}

double SpaceTimeField::max_boundary_mass_fraction() const {
  double m = 0.0;
  for (const auto& s : slices_)
    m = std::max(m, boundary_mass_fraction(s));
  return m;
}

}  // namespace nlslab
