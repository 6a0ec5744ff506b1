#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace stab {

// Arbitrary precision everywhere: the regularization pipeline doubles
// coefficients and the relevance bounds scale with the largest constant,
// so fixed-width integers would overflow silently.
using Int = boost::multiprecision::cpp_int;

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
  return -floor_div(-a, b);
}

// Result is always in [0, |b|).
inline Int pos_mod(const Int& a, const Int& b) {
  Int m = a - floor_div(a, abs(b)) * abs(b);
  return m;
}

inline Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a * b) / gcd(a, b);
}

inline long to_long(const Int& v) { return v.convert_to<long>(); }

inline std::string to_string(const Int& v) { return v.str(); }

}  // namespace stab
