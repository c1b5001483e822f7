#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace nlslab::detail {
namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

class PlanCache {
public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(std::size_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;

    // Plan on a scratch buffer; FFTW_UNALIGNED lets the plans execute on
    // arbitrary caller buffers via the new-array interface.
    std::vector<std::complex<double>> scratch(n);
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, FFTW_FORWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr, FFTW_BACKWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(n, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.fwd);
      fftw_destroy_plan(p.bwd);
    }
  }

private:
  PlanCache() = default;
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

}  // namespace

void dft_forward(const std::complex<double>* in, std::complex<double>* out,
                 std::size_t n) {
  PlanPair p = PlanCache::instance().get(n);
  fftw_execute_dft(p.fwd,
                   reinterpret_cast<fftw_complex*>(
                       const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

void dft_backward(const std::complex<double>* in, std::complex<double>* out,
                  std::size_t n) {
  PlanPair p = PlanCache::instance().get(n);
  fftw_execute_dft(p.bwd,
                   reinterpret_cast<fftw_complex*>(
                       const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

const char* fftw_version_string() { return fftw_version; }

}  // namespace nlslab::detail
