#pragma once

#include <stdexcept>
#include <string>

#include "ints.hpp"

namespace wittkit {

// A verified prime number, fixed once and threaded through everything.
class Prime {
 public:
  explicit Prime(long long p) : p_(p) {
    if (p < 2) throw std::invalid_argument("Prime: value must be >= 2");
    for (long long d = 2; d * d <= p; ++d)
      if (p % d == 0)
        throw std::invalid_argument("Prime: " + std::to_string(p) + " is composite");
  }
  long long value() const { return p_; }
  bool divides(const Int& x) const { return x % p_ == 0; }
  friend bool operator==(const Prime& a, const Prime& b) { return a.p_ == b.p_; }

 private:
  long long p_;
};

// largest k with p^k | x; x = 0 is rejected (the valuation would be infinite)
inline int padic_valuation(Int x, const Prime& p) {
  if (x == 0) throw std::invalid_argument("padic_valuation: zero has no finite valuation");
  if (x < 0) x = -x;
  int k = 0;
  while (x % p.value() == 0) {
    x /= p.value();
    ++k;
  }
  return k;
}

inline void require_coprime(long long j, const Prime& p) {
  if (j < 1) throw std::invalid_argument("index j must be >= 1");
  if (j % p.value() == 0)
    throw std::invalid_argument("index j must be coprime to p");
}

// card{ k >= 0 : j * p^k <= bound }
inline int geometric_count(const Prime& p, long long j, const Int& bound) {
  int c = 0;
  Int t = j;
  while (t <= bound) {
    ++c;
    t *= p.value();
  }
  return c;
}

// Length of the factor indexed by j (coprime to p) in the p-typical
// splitting of W_{m(i+1)}: the number of elements j, pj, p^2 j, ...
// inside {1, ..., m(i+1)}. Zero exactly when j > m(i+1); otherwise it is
// the unique s with p^{s-1} j <= m(i+1) < p^s j.
inline int factor_length(const Prime& p, long long m, long long i, long long j) {
  if (m < 1 || i < 0) throw std::invalid_argument("factor_length: need m >= 1, i >= 0");
  require_coprime(j, p);
  return geometric_count(p, j, Int(m) * (i + 1));
}

// floor((p^{u-1} j - 1) / m): the polar degree attached to level u and index j
inline Int rep_degree(const Prime& p, long long m, int u, long long j) {
  if (m < 1 || u < 1 || j < 1)
    throw std::invalid_argument("rep_degree: need m, u, j >= 1");
  return (ipow(p.value(), u - 1) * j - 1) / m;
}

// Length of the cyclic module attached to (a, u, i):
//   u        if a <= i,
//   u - s    if [a/p^s] <= i < [a/p^{s-1}] for some 1 <= s < u,
//   0        if i < [a/p^{u-1}].
// The three cases partition all inputs.
inline int level_length(const Prime& p, const Int& a, int u, long long i) {
  if (a < 1 || u < 1 || i < 0)
    throw std::invalid_argument("level_length: need a, u >= 1 and i >= 0");
  if (a <= i) return u;
  Int q = a;
  for (int s = 1; s < u; ++s) {
    q /= p.value();
    if (q <= i) return u - s;  // previous quotient was still > i
  }
  return 0;
}

// the unique u' with p^{u'-1} <= m(i+1) < p^{u'}
inline int stabilization_level(const Prime& p, long long m, long long i) {
  if (m < 1 || i < 0) throw std::invalid_argument("stabilization_level: need m >= 1, i >= 0");
  const Int bound = Int(m) * (i + 1);
  int u = 1;
  Int t = p.value();
  while (t <= bound) {
    t *= p.value();
    ++u;
  }
  return u;
}

// min(u, v_p(a) + 1)
inline int capped_level(int u, const Int& a, const Prime& p) {
  if (u < 1 || a < 1) throw std::invalid_argument("capped_level: need u, a >= 1");
  return std::min(u, padic_valuation(a, p) + 1);
}

}  // namespace wittkit
