#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace wittkit {

// Exact arbitrary-precision integer. Used for every quantity that can
// outgrow 64 bits: powers p^u, ghost components, presentation matrices.
using Int = boost::multiprecision::cpp_int;

inline Int ipow(const Int& base, long long exp) {
  if (exp < 0) throw std::invalid_argument("ipow: negative exponent");
  Int r{1}, b{base};
  while (exp > 0) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

// representative of x in [0, mod)
inline Int imod(const Int& x, const Int& mod) {
  Int r = x % mod;
  if (r < 0) r += mod;
  return r;
}

// modular power on materialized values (keeps expression templates out)
inline Int powmod(const Int& base, const Int& exp, const Int& mod) {
  Int r = powm(base, exp, mod);
  return r;
}

}  // namespace wittkit
