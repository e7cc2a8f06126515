#pragma once

#include <map>
#include <utility>

#include "truncation.hpp"

namespace wittkit {

// Raised by unghost() when a ghost vector is not in the image of the ghost
// map over the integers.
class NonIntegralGhost : public std::runtime_error {
 public:
  explicit NonIntegralGhost(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Coordinate model over Z.
//
// A vector over S is a coordinate family (a_s)_{s in S}. Ring operations go
// through the ghost map w_n = sum_{d | n} d * a_d^{n/d}, which is an
// injective ring homomorphism into the componentwise product ring; results
// come back through triangular back-substitution. For ring operations the
// back-substitution is integral by the universal Witt polynomials.
// ---------------------------------------------------------------------------

struct GhostVector {
  TruncationSet S;
  std::map<long long, Int> ghost;
  friend bool operator==(const GhostVector&, const GhostVector&) = default;
};

class WittVectorZ {
 public:
  WittVectorZ() = default;
  WittVectorZ(TruncationSet S, std::map<long long, Int> coords)
      : S_(std::move(S)), coords_(std::move(coords)) {
    if (coords_.size() != S_.size())
      throw std::invalid_argument("WittVectorZ: coordinates must match the truncation set");
    for (const auto& [s, a] : coords_)
      if (!S_.contains(s))
        throw std::invalid_argument("WittVectorZ: coordinate outside the truncation set");
  }

  static WittVectorZ zero(const TruncationSet& S) {
    std::map<long long, Int> c;
    for (long long s : S.members()) c[s] = 0;
    return WittVectorZ(S, std::move(c));
  }
  static WittVectorZ one(const TruncationSet& S) {
    WittVectorZ x = zero(S);
    if (S.contains(1)) x.coords_[1] = 1;
    return x;
  }

  const TruncationSet& set() const { return S_; }
  const Int& coord(long long s) const { return coords_.at(s); }
  const std::map<long long, Int>& coords() const { return coords_; }

  friend bool operator==(const WittVectorZ&, const WittVectorZ&) = default;

 private:
  TruncationSet S_;
  std::map<long long, Int> coords_;
};

inline GhostVector ghost_of(const WittVectorZ& x) {
  GhostVector g{x.set(), {}};
  for (long long n : x.set().members()) {
    Int w = 0;
    for (long long d : x.set().members()) {
      if (d > n) break;
      if (n % d == 0) w += Int(d) * ipow(x.coord(d), n / d);
    }
    g.ghost[n] = w;
  }
  return g;
}

inline WittVectorZ unghost(const GhostVector& g) {
  std::map<long long, Int> coords;
  for (long long n : g.S.members()) {
    Int rest = 0;
    for (long long d : g.S.members()) {
      if (d >= n) break;
      if (n % d == 0) rest += Int(d) * ipow(coords.at(d), n / d);
    }
    Int num = g.ghost.at(n) - rest;
    if (num % n != 0)
      throw NonIntegralGhost("unghost: component " + std::to_string(n) +
                             " is not integral");
    coords[n] = num / n;
  }
  return WittVectorZ(g.S, std::move(coords));
}

namespace detail {
inline void require_same_set(const WittVectorZ& x, const WittVectorZ& y) {
  if (!(x.set() == y.set()))
    throw std::invalid_argument("mismatched truncation sets");
}
}  // namespace detail

inline WittVectorZ add(const WittVectorZ& x, const WittVectorZ& y) {
  detail::require_same_set(x, y);
  GhostVector gx = ghost_of(x), gy = ghost_of(y);
  for (auto& [n, w] : gx.ghost) w += gy.ghost.at(n);
  return unghost(gx);
}

inline WittVectorZ mul(const WittVectorZ& x, const WittVectorZ& y) {
  detail::require_same_set(x, y);
  GhostVector gx = ghost_of(x), gy = ghost_of(y);
  for (auto& [n, w] : gx.ghost) w *= gy.ghost.at(n);
  return unghost(gx);
}

// F_s : W_S -> W_{S/s}, on ghost components w'_t = w_{st}
inline WittVectorZ frobenius(const WittVectorZ& x, long long s) {
  if (s < 1) throw std::invalid_argument("frobenius: need s >= 1");
  GhostVector gx = ghost_of(x);
  GhostVector g{x.set().quotient(s), {}};
  for (long long t : g.S.members()) g.ghost[t] = gx.ghost.at(s * t);
  return unghost(g);
}

// V_s : W_{S/s} -> W_S, on ghost components w'_t = s * w_{t/s} when s | t
inline WittVectorZ verschiebung(const WittVectorZ& x, long long s, const TruncationSet& S) {
  if (s < 1) throw std::invalid_argument("verschiebung: need s >= 1");
  if (!(x.set() == S.quotient(s)))
    throw std::invalid_argument("verschiebung: source must live over S/s");
  GhostVector gx = ghost_of(x);
  GhostVector g{S, {}};
  for (long long t : S.members())
    g.ghost[t] = (t % s == 0) ? Int(s) * gx.ghost.at(t / s) : Int(0);
  return unghost(g);
}

// res : W_S -> W_T, coordinate projection
inline WittVectorZ restrict_to(const WittVectorZ& x, const TruncationSet& T) {
  if (!T.subset_of(x.set()))
    throw std::invalid_argument("restrict_to: T is not a subset of S");
  std::map<long long, Int> coords;
  for (long long t : T.members()) coords[t] = x.coord(t);
  return WittVectorZ(T, std::move(coords));
}

// ---------------------------------------------------------------------------
// Coordinate model over F_p. All operations lift coordinates through the
// canonical section {0, ..., p-1}, apply the integral operation, and reduce;
// this is correct because every operation is given by universal integer
// polynomials, and the fixed lift makes results reproducible bit for bit.
// ---------------------------------------------------------------------------

class WittVectorFp {
 public:
  WittVectorFp(Prime p, TruncationSet S, std::map<long long, int> coords)
      : p_(p), S_(std::move(S)), coords_(std::move(coords)) {
    if (coords_.size() != S_.size())
      throw std::invalid_argument("WittVectorFp: coordinates must match the truncation set");
    for (const auto& [s, a] : coords_) {
      if (!S_.contains(s))
        throw std::invalid_argument("WittVectorFp: coordinate outside the truncation set");
      if (a < 0 || a >= p_.value())
        throw std::invalid_argument("WittVectorFp: coordinate out of range");
    }
  }

  static WittVectorFp zero(const Prime& p, const TruncationSet& S) {
    std::map<long long, int> c;
    for (long long s : S.members()) c[s] = 0;
    return WittVectorFp(p, S, std::move(c));
  }
  static WittVectorFp one(const Prime& p, const TruncationSet& S) {
    WittVectorFp x = zero(p, S);
    if (S.contains(1)) x.coords_[1] = 1;
    return x;
  }

  const Prime& prime() const { return p_; }
  const TruncationSet& set() const { return S_; }
  int coord(long long s) const { return coords_.at(s); }
  const std::map<long long, int>& coords() const { return coords_; }

  WittVectorZ lift() const {
    std::map<long long, Int> c;
    for (const auto& [s, a] : coords_) c[s] = a;
    return WittVectorZ(S_, std::move(c));
  }
  static WittVectorFp reduce(const WittVectorZ& x, const Prime& p) {
    std::map<long long, int> c;
    for (const auto& [s, a] : x.coords())
      c[s] = imod(a, p.value()).convert_to<int>();
    return WittVectorFp(p, x.set(), std::move(c));
  }

  friend bool operator==(const WittVectorFp& a, const WittVectorFp& b) {
    return a.p_ == b.p_ && a.S_ == b.S_ && a.coords_ == b.coords_;
  }

 private:
  Prime p_;
  TruncationSet S_;
  std::map<long long, int> coords_;
};

namespace detail {
inline void require_same(const WittVectorFp& x, const WittVectorFp& y) {
  if (!(x.prime() == y.prime()) || !(x.set() == y.set()))
    throw std::invalid_argument("mismatched Witt vectors");
}
}  // namespace detail

inline WittVectorFp add(const WittVectorFp& x, const WittVectorFp& y) {
  detail::require_same(x, y);
  return WittVectorFp::reduce(add(x.lift(), y.lift()), x.prime());
}
inline WittVectorFp mul(const WittVectorFp& x, const WittVectorFp& y) {
  detail::require_same(x, y);
  return WittVectorFp::reduce(mul(x.lift(), y.lift()), x.prime());
}
inline WittVectorFp frobenius(const WittVectorFp& x, long long s) {
  return WittVectorFp::reduce(frobenius(x.lift(), s), x.prime());
}
inline WittVectorFp verschiebung(const WittVectorFp& x, long long s, const TruncationSet& S) {
  return WittVectorFp::reduce(verschiebung(x.lift(), s, S), x.prime());
}
inline WittVectorFp restrict_to(const WittVectorFp& x, const TruncationSet& T) {
  return WittVectorFp::reduce(restrict_to(x.lift(), T), x.prime());
}

// ---------------------------------------------------------------------------
// The cyclic model W_u(F_p) = Z/p^u and the decomposition along prime-to-p
// indices. The normalization is the unique unital ring isomorphism, k*1 -> k;
// concretely the value is the top ghost component of the canonical lift,
// which is well defined mod p^u. Only lengths, kernels, cokernels and
// valuations are contractual downstream, not distinguished generators.
// ---------------------------------------------------------------------------

inline bool is_p_typical(const TruncationSet& S, const Prime& p) {
  Int t = 1;
  for (long long s : S.members()) {
    if (s != t) return false;
    t *= p.value();
  }
  return true;
}

// W_u(F_p) -> Z/p^u
inline Int p_typical_value(const WittVectorFp& x) {
  if (!is_p_typical(x.set(), x.prime()))
    throw std::invalid_argument("p_typical_value: set is not p-typical");
  const long long p = x.prime().value();
  const int u = static_cast<int>(x.set().size());
  if (u == 0) return 0;
  const Int modulus = ipow(p, u);
  Int w = 0, pk = 1;
  for (int t = 0; t < u; ++t) {
    long long idx = x.set().members()[static_cast<std::size_t>(t)];
    w += pk * powmod(Int(x.coord(idx)), ipow(p, u - 1 - t), modulus);
    pk *= p;
  }
  return imod(w, modulus);
}

// Z/p^u -> W_u(F_p), inverse of p_typical_value. Peels coordinates top-down:
// a_0 = k mod p, then k <- (k - a_0^{p^{u-1}}) / p in Z/p^{u-1}.
inline WittVectorFp p_typical_from_value(const Int& k, int u, const Prime& p) {
  if (u < 0) throw std::invalid_argument("p_typical_from_value: need u >= 0");
  TruncationSet S = p_typical_set(p, u);
  std::map<long long, int> coords;
  Int cur = imod(k, ipow(p.value(), u));
  for (int t = 0; t < u; ++t) {
    const int rem = u - t;
    const Int mod_cur = ipow(p.value(), rem);
    const int a = (cur % p.value()).convert_to<int>();
    coords[S.members()[static_cast<std::size_t>(t)]] = a;
    Int tei = powmod(Int(a), ipow(p.value(), rem - 1), mod_cur);
    cur = imod(cur - tei, mod_cur) / p.value();
  }
  return WittVectorFp(p, S, std::move(coords));
}

// Decomposition of W_S(F_p) into cyclic factors Z/p^{u_p(S,j)} indexed by
// the prime-to-p members j of S.
class PTypicalDecomp {
 public:
  PTypicalDecomp(Prime p, TruncationSet S, std::map<long long, std::pair<int, Int>> comps)
      : p_(p), S_(std::move(S)), comps_(std::move(comps)) {
    for (long long j : S_.members()) {
      if (j % p_.value() == 0) continue;
      auto it = comps_.find(j);
      if (it == comps_.end())
        throw std::invalid_argument("PTypicalDecomp: missing component " + std::to_string(j));
      const auto& [u, value] = it->second;
      if (u != u_p_of(S_, j, p_))
        throw std::invalid_argument("PTypicalDecomp: inconsistent modulus at " + std::to_string(j));
      if (value < 0 || value >= ipow(p_.value(), u))
        throw std::invalid_argument("PTypicalDecomp: component value out of range");
    }
    if (comps_.size() != count_indices())
      throw std::invalid_argument("PTypicalDecomp: stray component index");
  }

  const Prime& prime() const { return p_; }
  const TruncationSet& set() const { return S_; }
  const std::map<long long, std::pair<int, Int>>& components() const { return comps_; }
  bool has(long long j) const { return comps_.count(j) > 0; }
  int level(long long j) const { return comps_.at(j).first; }
  const Int& value(long long j) const { return comps_.at(j).second; }

  friend bool operator==(const PTypicalDecomp& a, const PTypicalDecomp& b) {
    return a.p_ == b.p_ && a.S_ == b.S_ && a.comps_ == b.comps_;
  }

 private:
  std::size_t count_indices() const {
    std::size_t n = 0;
    for (long long j : S_.members())
      if (j % p_.value() != 0) ++n;
    return n;
  }
  Prime p_;
  TruncationSet S_;
  std::map<long long, std::pair<int, Int>> comps_;
};

// eta_j = res . F_j followed by the cyclic identification
inline PTypicalDecomp eta_decompose(const WittVectorFp& x) {
  const Prime& p = x.prime();
  std::map<long long, std::pair<int, Int>> comps;
  for (long long j : x.set().members()) {
    if (j % p.value() == 0) continue;
    int u = u_p_of(x.set(), j, p);
    WittVectorFp y = restrict_to(frobenius(x, j), p_typical_set(p, u));
    comps[j] = {u, p_typical_value(y)};
  }
  return PTypicalDecomp(p, x.set(), std::move(comps));
}

// Inverse of eta_decompose. Coordinates are recovered smallest index first:
// the component of eta_j at level v_p(s)+1 depends only on coordinates
// a_d with d <= s and is affine in a_s, so each step pins one coordinate.
inline WittVectorFp eta_recompose(const PTypicalDecomp& d) {
  const Prime& p = d.prime();
  const TruncationSet& S = d.set();
  std::map<long long, int> coords;
  for (long long s : S.members()) coords[s] = 0;
  for (long long s : S.members()) {
    long long j = s;
    int k = 0;
    while (j % p.value() == 0) {
      j /= p.value();
      ++k;
    }
    const Int target = imod(d.value(j), ipow(p.value(), k + 1));
    bool found = false;
    for (int c = 0; c < p.value() && !found; ++c) {
      coords[s] = c;
      WittVectorFp partial(p, S, coords);
      WittVectorFp y = restrict_to(frobenius(partial, j), p_typical_set(p, k + 1));
      found = (p_typical_value(y) == target);
    }
    if (!found)
      throw std::invalid_argument("eta_recompose: components are not in the image of eta");
  }
  return WittVectorFp(p, S, std::move(coords));
}

// ---------------------------------------------------------------------------
// Operators transported through eta. In the cyclic model, R and F act as
// reduction and V as multiplication by p; F_s and V_s additionally reindex
// by the prime-to-p part of s.
// ---------------------------------------------------------------------------

namespace detail {
inline void require_same(const PTypicalDecomp& a, const PTypicalDecomp& b) {
  if (!(a.prime() == b.prime()) || !(a.set() == b.set()))
    throw std::invalid_argument("mismatched decompositions");
}
}  // namespace detail

inline PTypicalDecomp decomposed_add(const PTypicalDecomp& a, const PTypicalDecomp& b) {
  detail::require_same(a, b);
  std::map<long long, std::pair<int, Int>> comps;
  for (const auto& [j, c] : a.components())
    comps[j] = {c.first, imod(c.second + b.value(j), ipow(a.prime().value(), c.first))};
  return PTypicalDecomp(a.prime(), a.set(), std::move(comps));
}

inline PTypicalDecomp decomposed_mul(const PTypicalDecomp& a, const PTypicalDecomp& b) {
  detail::require_same(a, b);
  std::map<long long, std::pair<int, Int>> comps;
  for (const auto& [j, c] : a.components())
    comps[j] = {c.first, imod(c.second * b.value(j), ipow(a.prime().value(), c.first))};
  return PTypicalDecomp(a.prime(), a.set(), std::move(comps));
}

// factor j of T survives by reduction mod p^{u_p(T,j)}, the rest die
inline PTypicalDecomp decomposed_restrict(const PTypicalDecomp& d, const TruncationSet& T) {
  if (!T.subset_of(d.set()))
    throw std::invalid_argument("decomposed_restrict: T is not a subset of S");
  const Prime& p = d.prime();
  std::map<long long, std::pair<int, Int>> comps;
  for (long long j : T.members()) {
    if (j % p.value() == 0) continue;
    int u = u_p_of(T, j, p);
    comps[j] = {u, imod(d.value(j), ipow(p.value(), u))};
  }
  return PTypicalDecomp(p, T, std::move(comps));
}

// factor s'j'' of S lands in factor j'' of S/s by reduction mod p^{u-v},
// where s = p^v s'
inline PTypicalDecomp decomposed_frobenius(const PTypicalDecomp& d, long long s) {
  if (s < 1) throw std::invalid_argument("decomposed_frobenius: need s >= 1");
  const Prime& p = d.prime();
  const int v = padic_valuation(Int(s), p);
  const long long sp = s / ipow(p.value(), v).convert_to<long long>();
  TruncationSet T = d.set().quotient(s);
  std::map<long long, std::pair<int, Int>> comps;
  for (long long j2 : T.members()) {
    if (j2 % p.value() == 0) continue;
    int u2 = u_p_of(T, j2, p);
    comps[j2] = {u2, imod(d.value(sp * j2), ipow(p.value(), u2))};
  }
  return PTypicalDecomp(p, T, std::move(comps));
}

// factor j'' of S/s lands in factor s'j'' of S by multiplication with s'p^v;
// factors of S not of that shape receive zero
inline PTypicalDecomp decomposed_verschiebung(const PTypicalDecomp& d, long long s,
                                              const TruncationSet& S) {
  if (s < 1) throw std::invalid_argument("decomposed_verschiebung: need s >= 1");
  const Prime& p = d.prime();
  if (!(d.set() == S.quotient(s)))
    throw std::invalid_argument("decomposed_verschiebung: source must live over S/s");
  const int v = padic_valuation(Int(s), p);
  const long long sp = s / ipow(p.value(), v).convert_to<long long>();
  std::map<long long, std::pair<int, Int>> comps;
  for (long long j : S.members()) {
    if (j % p.value() == 0) continue;
    int u = u_p_of(S, j, p);
    Int val = 0;
    if (j % sp == 0 && d.has(j / sp)) {
      val = imod(Int(sp) * ipow(p.value(), v) * d.value(j / sp), ipow(p.value(), u));
    }
    comps[j] = {u, val};
  }
  return PTypicalDecomp(p, S, std::move(comps));
}

}  // namespace wittkit
