#ifndef NLSLAB_INITIAL_DATA_HPP
#define NLSLAB_INITIAL_DATA_HPP

#include <cstdint>

#include "nlslab/field.hpp"

namespace nlslab {

// exp(-a x^2)
Field gaussian_data(const GridSpec& grid, double a = 1.0);

// sqrt(2) sech(x): stationary profile of the focusing cubic equation,
// evolving as sqrt(2) sech(x) exp(i t).
Field soliton_data(const GridSpec& grid);

// Smooth plateau cutoff: 1 on [-L/2, L/2], smoothly 0 for |x| >= 3L/4.
// Slowly decaying data are multiplied by this window before periodization;
// the domain-adequacy monitor watches the band the cutoff vacates.
double plateau_cutoff(double x, double half_width);

// amplitude * (1+|x|)^(-beta) * plateau(x). In L^p of the line for
// beta > 1/p and outside L^2 for beta < 1/2.
Field power_law_data(const GridSpec& grid, double beta, double amplitude = 1.0);

// Band-limited complex noise under a Gaussian spatial envelope,
// normalized to ||.||_2 = 1. Deterministic for a given seed (the generator
// does not depend on libstdc++ distribution internals).
Field random_smooth_data(const GridSpec& grid, std::uint64_t seed,
                         double x_width = 1.0, double band = 2.0);

// Indicator of [a, b) with endpoints snapped to grid points.
Field indicator_data(const GridSpec& grid, double a, double b);

// exp(i xi_k x) for the k-th spectral bin.
Field single_mode_data(const GridSpec& grid, std::size_t bin);

}  // namespace nlslab

#endif
