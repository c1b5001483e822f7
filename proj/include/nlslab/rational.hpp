#ifndef NLSLAB_RATIONAL_HPP
#define NLSLAB_RATIONAL_HPP

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

#include "nlslab/errors.hpp"

namespace nlslab {

// Exact arithmetic for the exponent ledger. All identities among the
// scalar exponents (conjugates, Q_p(r), interpolation parameters, plan
// exponents) are rational functions, so they can be checked with zero
// tolerance when the inputs are rational.
using Rat = boost::rational<long long>;

inline double to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

// Parses "13/6", "3", "-5/2". Used by config files and the verify ledger.
Rat parse_rational(const std::string& text);

// n^e for rational n and integer e (e may be negative; n must be nonzero).
Rat rat_pow(const Rat& base, long long exp);

// Exact n^(u/v) when the result is rational (perfect v-th root of both
// numerator and denominator), otherwise throws invalid_argument.
Rat rat_root_pow(const Rat& base, const Rat& exponent);

}  // namespace nlslab

#endif
