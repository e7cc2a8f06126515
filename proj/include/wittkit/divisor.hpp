#pragma once

#include <map>

#include "arith.hpp"

namespace wittkit {

// Finitely supported order vector over the prime-to-p positive integers.
// Effective means all orders are >= 0; sums and differences are allowed so
// that telescoping identities can be stated, effectivity is asserted where
// a result is required to be effective.
class Divisor {
 public:
  explicit Divisor(Prime p) : p_(p) {}
  Divisor(Prime p, std::map<long long, long long> orders) : p_(p) {
    for (const auto& [j, o] : orders) {
      require_coprime(j, p_);
      if (o != 0) orders_[j] = o;
    }
  }

  const Prime& prime() const { return p_; }
  long long order(long long j) const {
    auto it = orders_.find(j);
    return it == orders_.end() ? 0 : it->second;
  }
  const std::map<long long, long long>& orders() const { return orders_; }

  bool is_effective() const {
    for (const auto& [j, o] : orders_)
      if (o < 0) return false;
    return true;
  }
  long long total_order() const {
    long long t = 0;
    for (const auto& [j, o] : orders_) t += o;
    return t;
  }

  Divisor& add_order(long long j, long long delta) {
    require_coprime(j, p_);
    long long o = order(j) + delta;
    if (o == 0)
      orders_.erase(j);
    else
      orders_[j] = o;
    return *this;
  }

  friend Divisor operator+(const Divisor& a, const Divisor& b) {
    if (!(a.p_ == b.p_)) throw std::invalid_argument("Divisor: prime mismatch");
    Divisor r = a;
    for (const auto& [j, o] : b.orders_) r.add_order(j, o);
    return r;
  }
  friend Divisor operator-(const Divisor& a, const Divisor& b) {
    if (!(a.p_ == b.p_)) throw std::invalid_argument("Divisor: prime mismatch");
    Divisor r = a;
    for (const auto& [j, o] : b.orders_) r.add_order(j, -o);
    return r;
  }
  friend bool operator==(const Divisor& a, const Divisor& b) {
    return a.p_ == b.p_ && a.orders_ == b.orders_;
  }

 private:
  Prime p_;
  std::map<long long, long long> orders_;  // zero entries never stored
};

// divisor of W_r(F_p): order at j is card({1..r} ∩ {j, pj, p^2 j, ...})
inline Divisor witt_divisor(long long r, const Prime& p) {
  if (r < 1) throw std::invalid_argument("witt_divisor: need r >= 1");
  Divisor d(p);
  for (long long j = 1; j <= r; ++j) {
    if (j % p.value() == 0) continue;
    d.add_order(j, geometric_count(p, j, r));
  }
  return d;
}

// divisor of the transfer twist:
//   ord_j = sum_{0 <= h < i} ( s_p(m,h,j) - s_p(n,h,j) ),
// the telescoped difference of the divisors of W_{m(h+1)} and W_{n(h+1)}.
// Always effective for m > n.
inline Divisor twist_divisor(const Prime& p, long long m, long long n, long long i) {
  if (!(m > n && n >= 1)) throw std::invalid_argument("twist_divisor: need m > n >= 1");
  if (i < 0) throw std::invalid_argument("twist_divisor: need i >= 0");
  Divisor d(p);
  for (long long j = 1; j <= m * i; ++j) {
    if (j % p.value() == 0) continue;
    long long o = 0;
    for (long long h = 0; h < i; ++h)
      o += factor_length(p, m, h, j) - factor_length(p, n, h, j);
    if (o != 0) d.add_order(j, o);
  }
  if (!d.is_effective()) throw std::logic_error("twist_divisor: lost effectivity");
  return d;
}

// pointwise comparison over the union of supports
inline bool geq(const Divisor& a, const Divisor& b) {
  if (!(a.prime() == b.prime())) throw std::invalid_argument("geq: prime mismatch");
  for (const auto& [j, o] : a.orders())
    if (o < b.order(j)) return false;
  for (const auto& [j, o] : b.orders())
    if (a.order(j) < o) return false;
  return true;
}

// the vanishing criterion: twist divisor dominates div(W_{n(i+1)})
inline bool twist_dominates(const Prime& p, long long m, long long n, long long i) {
  if (!(m > n && n >= 1)) throw std::invalid_argument("twist_dominates: need m > n >= 1");
  return geq(twist_divisor(p, m, n, i), witt_divisor(n * (i + 1), p));
}

}  // namespace wittkit
