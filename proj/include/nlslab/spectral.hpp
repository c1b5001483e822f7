#ifndef NLSLAB_SPECTRAL_HPP
#define NLSLAB_SPECTRAL_HPP

#include "nlslab/field.hpp"

namespace nlslab {

// Unitary discrete Fourier transform (see GridSpec for the convention).
// The result is a field of spectral samples F(xi_k) in FFT bin order.
Field fourier(const Field& f);
Field inverse_fourier(const Field& f);

// Free Schrodinger flow U(t) = exp(i*t*d^2/dx^2): the Fourier multiplier
// exp(-i*t*xi^2). Exactly inverted by free_propagate(., -t); preserves the
// L2 norm up to round-off.
Field free_propagate(const Field& f, double t);

// (Sum |f_j|^p dx)^(1/p). Requires p >= 1.
double lp_norm(const Field& f, double p);

// lp_norm of the Fourier transform, with spectral measure dxi.
double fourier_lp_norm(const Field& f, double p);

// Fraction of |f|^2 mass at distance < L/4 from the domain boundary.
// Domain-adequacy monitor: dispersion transports mass, so experiments
// check this stays below a configured tolerance.
double boundary_mass_fraction(const Field& f);

}  // namespace nlslab

#endif
