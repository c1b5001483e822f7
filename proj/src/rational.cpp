#include "nlslab/rational.hpp"

#include <cmath>
#include <cstdlib>

namespace nlslab {

Rat parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(std::stoll(text));
    }
    long long num = std::stoll(text.substr(0, slash));
    long long den = std::stoll(text.substr(slash + 1));
    require_arg(den != 0, "parse_rational: zero denominator");
    return Rat(num, den);
  } catch (const std::logic_error&) {
    fail(ErrorCode::invalid_argument,
         "parse_rational: cannot parse '" + text + "'");
  }
}

Rat rat_pow(const Rat& base, long long exp) {
  if (exp == 0) return Rat(1);
  require_arg(base != Rat(0) || exp > 0, "rat_pow: 0 to a negative power");
  Rat b = exp > 0 ? base : Rat(1) / base;
  long long e = exp > 0 ? exp : -exp;
  Rat out(1);
  while (e > 0) {
    if (e & 1) out *= b;
    b *= b;
    e >>= 1;
  }
  return out;
}

namespace {

// Exact integer v-th root, or -1 if none exists.
long long exact_root(long long value, long long v) {
  if (value < 0) return -1;
  if (value == 0) return 0;
  auto guess = static_cast<long long>(
      std::llround(std::pow(static_cast<double>(value), 1.0 / static_cast<double>(v))));
  for (long long r = std::max<long long>(1, guess - 2); r <= guess + 2; ++r) {
    long long acc = 1;
    bool overflow = false;
    for (long long i = 0; i < v; ++i) {
      if (acc > value / r + 1) { overflow = true; break; }
      acc *= r;
    }
    if (!overflow && acc == value) return r;
  }
  return -1;
}

}  // namespace

Rat rat_root_pow(const Rat& base, const Rat& exponent) {
  require_arg(base > Rat(0), "rat_root_pow: base must be positive");
  const long long u = exponent.numerator();
  const long long v = exponent.denominator();
  long long rn = exact_root(base.numerator(), v);
  long long rd = exact_root(base.denominator(), v);
  require_arg(rn >= 0 && rd > 0,
              "rat_root_pow: base has no exact rational root for this exponent");
  return rat_pow(Rat(rn, rd), u);
}

}  // namespace nlslab
