#ifndef NLSLAB_SRC_FFT_HPP
#define NLSLAB_SRC_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace nlslab::detail {

// Unnormalized DFT (FFTW sign convention: forward = exp(-i 2 pi jk/n)).
// Plans are cached per size, created under a mutex (the FFTW planner is
// not thread-safe), and use FFTW_ESTIMATE so the algorithm choice — and
// therefore the round-off pattern — is reproducible run to run.
void dft_forward(const std::complex<double>* in, std::complex<double>* out,
                 std::size_t n);
void dft_backward(const std::complex<double>* in, std::complex<double>* out,
                  std::size_t n);

const char* fftw_version_string();

}  // namespace nlslab::detail

#endif
