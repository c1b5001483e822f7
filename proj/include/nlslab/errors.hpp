#ifndef NLSLAB_ERRORS_HPP
#define NLSLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nlslab {

// Error taxonomy shared by the C++ core and the C API (codes map 1:1).
enum class ErrorCode {
  ok = 0,
  invalid_argument = 1,      // contract violation (bad exponent, bad grid, ...)
  degenerate_exponent = 2,   // Q_p(r) undefined: 1 - 1/p - 1/r <= 0
  cut_unreachable = 3,       // choose_cut target outside achievable range
  blow_up = 4,               // amplitude ceiling exceeded during a solve
  no_contraction = 5,        // fixed-point iteration failed to converge
  config = 6,                // experiment config malformed
  io = 7,                    // file read/write failure
  internal = 8,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

inline void require_arg(bool cond, const std::string& what) {
  require(cond, ErrorCode::invalid_argument, what);
}

}  // namespace nlslab

#endif
