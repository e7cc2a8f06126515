#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "divisor.hpp"
#include "snf.hpp"

namespace wittkit {

// Finite abelian p-group as a multiset of cyclic exponents: sum Z/p^e.
// Canonical form is descending with zero exponents dropped; the trivial
// group is the empty multiset.
struct FinAbPGroup {
  long long p = 0;
  std::vector<int> exponents;

  static FinAbPGroup from_exponents(long long p, std::vector<int> es) {
    std::vector<int> kept;
    for (int e : es) {
      if (e < 0) throw std::invalid_argument("FinAbPGroup: negative exponent");
      if (e > 0) kept.push_back(e);
    }
    std::sort(kept.begin(), kept.end(), std::greater<int>());
    return FinAbPGroup{p, std::move(kept)};
  }

  long long length() const {
    long long t = 0;
    for (int e : exponents) t += e;
    return t;
  }
  bool trivial() const { return exponents.empty(); }
  friend bool operator==(const FinAbPGroup&, const FinAbPGroup&) = default;
};

inline std::vector<int> p_exponents(const std::vector<Int>& invariants, const Prime& p) {
  std::vector<int> es;
  for (const Int& d : invariants) {
    if (d == 0) throw std::logic_error("p_exponents: unexpected free factor");
    if (d == 1) continue;
    int e = padic_valuation(d, p);
    if (ipow(p.value(), e) != d)
      throw std::logic_error("p_exponents: invariant factor is not a p-power");
    es.push_back(e);
  }
  return es;
}

// ---------------------------------------------------------------------------
// Relative K-groups of F_p[x]/(x^m).
//
// For q = 2i+1 the group is the cokernel of the transfer-shaped map
//   sum_{j' in I_p, j' <= i+1}  Z/p^{t_{j'}}  --->  sum_{j in I_p, j <= m(i+1)}  Z/p^{A_j}
// with t_{j'} = s_p(1,i,j'), A_j = s_p(m,i,j), where the factor j' lands in
// the factor m'j' by multiplication with m'p^v (m = p^v m', so m' acts as a
// unit). Each target factor is handled by the exact cokernel of a map of
// cyclic groups; the full presentation-plus-Smith route below is the ground
// truth any shortcut has to match. Groups for q <= 0 or q even vanish.
// ---------------------------------------------------------------------------

struct KFactor {
  long long j = 0;
  int exponent = 0;  // the factor contributes Z/p^exponent
  friend bool operator==(const KFactor&, const KFactor&) = default;
};

// cokernel exponent of (unit * p^v) : Z/p^t -> Z/p^A, assuming v + t >= A
inline int cyclic_cokernel_exponent(int v, int t, int A) {
  if (v + t < A) throw std::logic_error("cyclic_cokernel_exponent: map not well defined");
  return std::min(v, A);
}

inline std::vector<KFactor> relative_k_factors(const Prime& p, long long m, long long i) {
  if (m < 1 || i < 0) throw std::invalid_argument("relative_k_factors: need m >= 1, i >= 0");
  const int v = padic_valuation(Int(m), p);
  const long long mp = m / ipow(p.value(), v).convert_to<long long>();
  std::vector<KFactor> factors;
  long long total = 0;
  for (long long j = 1; j <= m * (i + 1); ++j) {
    if (j % p.value() == 0) continue;
    const int A = factor_length(p, m, i, j);
    int e = A;
    if (j % mp == 0 && j / mp <= i + 1) {
      const int t = factor_length(p, 1, i, j / mp);
      e = cyclic_cokernel_exponent(v, t, A);
    }
    total += e;
    if (e > 0) factors.push_back({j, e});
  }
  if (total != (m - 1) * (i + 1))
    throw std::logic_error("relative_k_factors: length identity violated");
  return factors;
}

inline FinAbPGroup relative_k(const Prime& p, long long m, long long q) {
  if (m < 1) throw std::invalid_argument("relative_k: need m >= 1");
  if (q <= 0 || q % 2 == 0) return FinAbPGroup{p.value(), {}};
  std::vector<int> es;
  for (const KFactor& f : relative_k_factors(p, m, (q - 1) / 2)) es.push_back(f.exponent);
  return FinAbPGroup::from_exponents(p.value(), std::move(es));
}

// Same group from the raw integer presentation: relations p^{A_j} e_j plus
// one column m'p^v e_{m'j'} per source factor, reduced by Smith normal form.
inline FinAbPGroup relative_k_via_snf(const Prime& p, long long m, long long q) {
  if (m < 1) throw std::invalid_argument("relative_k_via_snf: need m >= 1");
  if (q <= 0 || q % 2 == 0) return FinAbPGroup{p.value(), {}};
  const long long i = (q - 1) / 2;
  const int v = padic_valuation(Int(m), p);
  const long long mp = m / ipow(p.value(), v).convert_to<long long>();

  std::vector<long long> targets;
  for (long long j = 1; j <= m * (i + 1); ++j)
    if (j % p.value() != 0) targets.push_back(j);
  std::map<long long, long long> row_of;
  for (std::size_t k = 0; k < targets.size(); ++k) row_of[targets[k]] = (long long)k;

  std::vector<long long> sources;
  for (long long j = 1; j <= i + 1; ++j)
    if (j % p.value() != 0) sources.push_back(j);

  Mat pres((long long)targets.size(), (long long)targets.size() + (long long)sources.size());
  for (std::size_t k = 0; k < targets.size(); ++k)
    pres((long long)k, (long long)k) = ipow(p.value(), factor_length(p, m, i, targets[k]));
  for (std::size_t k = 0; k < sources.size(); ++k)
    pres(row_of.at(mp * sources[k]), (long long)targets.size() + (long long)k) =
        Int(mp) * ipow(p.value(), v);

  return FinAbPGroup::from_exponents(p.value(), p_exponents(invariant_factors(pres), p));
}

// ---------------------------------------------------------------------------
// Brute-force oracle for q = 1: the group of units congruent to 1 mod (x)
// in F_p[x]/(x^n), with the structure read off from the order statistics
// N_k = #{g : g^{p^k} = 1}.
// ---------------------------------------------------------------------------

inline FinAbPGroup k1_units_oracle(const Prime& p, long long n) {
  if (n < 1) throw std::invalid_argument("k1_units_oracle: need n >= 1");
  Int size = ipow(p.value(), n - 1);
  if (size > 1000000) throw std::invalid_argument("k1_units_oracle: enumeration guard exceeded");
  const long long total = size.convert_to<long long>();
  const int pv = static_cast<int>(p.value());

  auto mul_mod = [&](const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> r(static_cast<std::size_t>(n), 0);
    for (long long a = 0; a < n; ++a) {
      if (f[(std::size_t)a] == 0) continue;
      for (long long b = 0; a + b < n; ++b)
        r[(std::size_t)(a + b)] = (r[(std::size_t)(a + b)] + f[(std::size_t)a] * g[(std::size_t)b]) % pv;
    }
    return r;
  };
  auto pth_power = [&](std::vector<int> f) {
    std::vector<int> acc(static_cast<std::size_t>(n), 0);
    acc[0] = 1;
    for (int k = 0; k < pv; ++k) acc = mul_mod(acc, f);
    return acc;
  };
  auto is_one = [&](const std::vector<int>& f) {
    if (f[0] != 1) return false;
    for (long long k = 1; k < n; ++k)
      if (f[(std::size_t)k] != 0) return false;
    return true;
  };

  // exact exponent (order = p^k) of each unit 1 + a_1 x + ... + a_{n-1} x^{n-1}
  std::map<int, long long> count_with_exponent;
  for (long long code = 0; code < total; ++code) {
    std::vector<int> f(static_cast<std::size_t>(n), 0);
    f[0] = 1;
    long long c = code;
    for (long long k = 1; k < n; ++k) {
      f[(std::size_t)k] = static_cast<int>(c % pv);
      c /= pv;
    }
    int k = 0;
    while (!is_one(f)) {
      f = pth_power(f);
      ++k;
    }
    ++count_with_exponent[k];
  }

  int kmax = count_with_exponent.empty() ? 0 : count_with_exponent.rbegin()->first;
  // c_k = #{cyclic factors with exponent >= k} from log_p N_k
  std::vector<long long> logN(static_cast<std::size_t>(kmax) + 1, 0);
  long long running = 0;
  for (int k = 0; k <= kmax; ++k) {
    auto it = count_with_exponent.find(k);
    if (it != count_with_exponent.end()) running += it->second;
    Int nk = running;
    int lg = 0;
    while (nk > 1) {
      if (nk % pv != 0) throw std::logic_error("k1_units_oracle: N_k not a p-power");
      nk /= pv;
      ++lg;
    }
    logN[(std::size_t)k] = lg;
  }
  std::vector<int> exponents;
  for (int k = 1; k <= kmax; ++k) {
    long long ck = logN[(std::size_t)k] - logN[(std::size_t)k - 1];
    long long next = (k < kmax) ? (logN[(std::size_t)k + 1] - logN[(std::size_t)k]) : 0;
    for (long long c = 0; c < ck - next; ++c) exponents.push_back(k);
  }
  return FinAbPGroup::from_exponents(p.value(), std::move(exponents));
}

// ---------------------------------------------------------------------------
// The transfer map between relative K-groups. Per prime-to-p factor j it is
//   (reduce, multiply by p^{w_j}) : Z/p^{a_j} -> Z/p^{b_j},
// where a_j, b_j are the cokernel exponents of source and target and
// w_j = sum_{0 <= h < i} (s_p(m,h,j) - s_p(n,h,j)) is the twist valuation.
// The inequality w_j + a_j >= b_j, forced by the commuting ladder the map
// descends from, makes this well defined on factors; it is checked here.
// ---------------------------------------------------------------------------

struct TransferFactor {
  long long j = 0;
  int source_exp = 0;  // a_j
  int target_exp = 0;  // b_j
  long long twist = 0;  // w_j
  friend bool operator==(const TransferFactor&, const TransferFactor&) = default;
};

struct TransferMap {
  long long p = 0, m = 0, n = 0, q = 0;
  std::vector<TransferFactor> factors;  // ascending j; a_j = b_j = 0 omitted

  const TransferFactor* find(long long j) const {
    for (const auto& f : factors)
      if (f.j == j) return &f;
    return nullptr;
  }

  // image of an element of the source group (j -> residue mod p^{a_j})
  std::map<long long, Int> apply(const std::map<long long, Int>& x) const {
    Prime pr(p);
    std::map<long long, Int> y;
    for (const auto& [j, val] : x) {
      const TransferFactor* f = find(j);
      if (!f || f->source_exp == 0)
        throw std::invalid_argument("TransferMap::apply: no source factor at given index");
      if (f->target_exp == 0) continue;
      Int img = imod(ipow(p, f->twist) * imod(val, ipow(p, f->source_exp)),
                     ipow(p, f->target_exp));
      if (img != 0) y[j] = img;
    }
    return y;
  }

  bool is_zero() const {
    for (const auto& f : factors)
      if (f.source_exp > 0 && f.twist < f.target_exp) return false;
    return true;
  }
};

inline TransferMap transfer_map(const Prime& p, long long m, long long n, long long q) {
  if (m < n || n < 1) throw std::invalid_argument("transfer_map: need m >= n >= 1");
  if (q < 1 || q % 2 == 0) throw std::invalid_argument("transfer_map: need odd q >= 1");
  const long long i = (q - 1) / 2;

  std::map<long long, int> a, b;
  for (const KFactor& f : relative_k_factors(p, m, i)) a[f.j] = f.exponent;
  for (const KFactor& f : relative_k_factors(p, n, i)) b[f.j] = f.exponent;

  TransferMap t{p.value(), m, n, q, {}};
  for (long long j = 1; j <= m * (i + 1); ++j) {
    if (j % p.value() == 0) continue;
    const int aj = a.count(j) ? a[j] : 0;
    const int bj = b.count(j) ? b[j] : 0;
    if (aj == 0 && bj == 0) continue;
    long long w = 0;
    for (long long h = 0; h < i; ++h)
      w += factor_length(p, m, h, j) - factor_length(p, n, h, j);
    if (aj > 0 && w + aj < bj)
      throw std::logic_error("transfer_map: factor map not well defined");
    t.factors.push_back({j, aj, bj, w});
  }
  return t;
}

// kernel and cokernel from the per-factor cyclic analysis
inline std::pair<FinAbPGroup, FinAbPGroup> kernel_cokernel(const TransferMap& t) {
  std::vector<int> ker, coker;
  for (const auto& f : t.factors) {
    const long long weff = std::min<long long>(f.twist, f.target_exp);
    if (f.source_exp > 0)
      ker.push_back(
          static_cast<int>(f.source_exp - std::max<long long>(0, f.target_exp - f.twist)));
    if (f.target_exp > 0)
      coker.push_back(f.source_exp > 0 ? static_cast<int>(weff) : f.target_exp);
  }
  return {FinAbPGroup::from_exponents(t.p, std::move(ker)),
          FinAbPGroup::from_exponents(t.p, std::move(coker))};
}

// same answer from Smith normal form on the full integer presentation
inline std::pair<FinAbPGroup, FinAbPGroup> kernel_cokernel_via_snf(const TransferMap& t) {
  Prime p(t.p);
  std::vector<const TransferFactor*> src, dst;
  for (const auto& f : t.factors) {
    if (f.source_exp > 0) src.push_back(&f);
    if (f.target_exp > 0) dst.push_back(&f);
  }
  const long long ns = (long long)src.size(), nd = (long long)dst.size();

  Mat M(nd, ns);  // the map on chosen generators
  for (long long c = 0; c < ns; ++c)
    for (long long r = 0; r < nd; ++r)
      if (dst[(std::size_t)r]->j == src[(std::size_t)c]->j)
        M(r, c) = ipow(t.p, src[(std::size_t)c]->twist);
  Mat NB(nd, nd), NA(ns, ns);
  for (long long r = 0; r < nd; ++r) NB(r, r) = ipow(t.p, dst[(std::size_t)r]->target_exp);
  for (long long c = 0; c < ns; ++c) NA(c, c) = ipow(t.p, src[(std::size_t)c]->source_exp);

  // cokernel: target modulo image and relations
  FinAbPGroup coker =
      FinAbPGroup::from_exponents(t.p, p_exponents(invariant_factors(hcat(M, NB)), p));

  // kernel: solutions of Mx = 0 in the target group, modulo source relations
  Mat K = kernel_basis(hcat(M, NB));
  Mat L(ns, K.cols);
  for (long long r = 0; r < ns; ++r)
    for (long long c = 0; c < K.cols; ++c) L(r, c) = K(r, c);
  // L's columns span the preimage lattice {x : Mx in im NB}; quotient by NA
  FinAbPGroup ker = FinAbPGroup::from_exponents(t.p, p_exponents(quotient_invariants(L, NA), p));
  return {ker, coker};
}

// decided on the realized map, not on the divisor criterion
inline bool transfer_is_zero(const Prime& p, long long m, long long n, long long q) {
  if (m <= n || n < 1) throw std::invalid_argument("transfer_is_zero: need m > n >= 1");
  if (q <= 0 || q % 2 == 0) return true;
  return transfer_map(p, m, n, q).is_zero();
}

// ---------------------------------------------------------------------------
// Vanishing thresholds. Only indices j < 2mn/(m-n) can violate the divisor
// criterion, and once the per-j inequality holds at some i with
// (i+1)(m-n) >= n it holds for all larger i, so both scans below are finite.
// ---------------------------------------------------------------------------

namespace detail {
// per-index criterion: v_p(twist at j) >= s_p(n,i,j)
inline bool per_index_dominates(const Prime& p, long long m, long long n, long long i,
                                long long j) {
  long long w = 0;
  for (long long h = 0; h < i; ++h)
    w += factor_length(p, m, h, j) - factor_length(p, n, h, j);
  return w >= factor_length(p, n, i, j);
}

// first i after which the per-j criterion holds forever (0 if it never fails)
inline long long per_index_threshold(const Prime& p, long long m, long long n, long long j) {
  long long last_fail = -1;
  long long w = 0;
  for (long long i = 0;; ++i) {
    bool ok = w >= factor_length(p, n, i, j);
    if (!ok) last_fail = i;
    if (ok && (i + 1) * (m - n) >= n) break;
    if (i > 2000000) throw std::logic_error("per_index_threshold: no stabilization");
    w += factor_length(p, m, i, j) - factor_length(p, n, i, j);
  }
  return last_fail + 1;
}
}  // namespace detail

struct IThreshold {
  long long i0 = 0;
  long long lower_bound = 0;  // [(p-1)/m]
};

// minimal i0 with twist_dominates(p,m,n,i) for all i >= i0
inline IThreshold i_threshold(const Prime& p, long long m, long long n) {
  if (!(m > n && n > 1)) throw std::invalid_argument("i_threshold: need m > n > 1");
  long long i0 = 0;
  for (long long j = 1; (m - n) * j < 2 * m * n; ++j) {
    if (j % p.value() == 0) continue;
    i0 = std::max(i0, detail::per_index_threshold(p, m, n, j));
  }
  return {i0, (p.value() - 1) / m};
}

// first failure (i, j) of "twist_dominates for all i > 0" at this m, if any
inline std::optional<std::pair<long long, long long>> domination_witness(const Prime& p,
                                                                         long long m,
                                                                         long long n) {
  const long long imax = std::max<long long>(1, (n + (m - n) - 1) / (m - n));
  for (long long j = 1; (m - n) * j < 2 * m * n; ++j) {
    if (j % p.value() == 0) continue;
    for (long long i = 1; i <= imax; ++i)
      if (!detail::per_index_dominates(p, m, n, i, j)) return std::make_pair(i, j);
  }
  return std::nullopt;
}

// minimal m0 such that twist_dominates(p,m,n,i) for all m >= m0 and i > 0.
// The per-(i,j) criterion is nondecreasing in m, so the first m that passes
// settles the full quantifier.
inline long long m_threshold(const Prime& p, long long n) {
  if (n <= 1) throw std::invalid_argument("m_threshold: need n > 1");
  for (long long m = n + 1;; ++m) {
    if (!domination_witness(p, m, n).has_value()) return m;
    if (m > 1000000) throw std::logic_error("m_threshold: no bound found");
  }
}

struct QThreshold {
  long long q0 = 0;
  bool beyond_theorem = false;       // computed outside the m > n+1 hypothesis
  long long largest_failing_q = -1;  // odd, -1 when the map is zero for all q
};

// minimal odd q0 >= 1 with transfer_is_zero for all q >= q0
inline QThreshold q_threshold(const Prime& p, long long m, long long n) {
  if (m <= n || n < 1) throw std::invalid_argument("q_threshold: need m > n >= 1");
  QThreshold r;
  r.beyond_theorem = (m == n + 1);
  if (n == 1) {
    r.q0 = 1;  // the target groups vanish identically
    return r;
  }
  const long long I = i_threshold(p, m, n).i0;
  for (long long i = 0; i < I; ++i)
    if (!transfer_is_zero(p, m, n, 2 * i + 1)) r.largest_failing_q = 2 * i + 1;
  r.q0 = (r.largest_failing_q < 0) ? 1 : r.largest_failing_q + 2;
  return r;
}

// ---------------------------------------------------------------------------
// Three independent routes to the twist valuation.
// ---------------------------------------------------------------------------

struct ValuationTriple {
  long long v1 = 0, v2 = 0, v3 = 0;
  bool agree() const { return v1 == v2 && v2 == v3; }
};

inline ValuationTriple valuation_triple(const Prime& p, long long m, long long n, long long i,
                                        long long j, int u) {
  if (m < n || n < 1 || i < 0) throw std::invalid_argument("valuation_triple: bad parameters");
  require_coprime(j, p);
  if (u < 1 || ipow(p.value(), u) * j <= Int(m) * (i + 1))
    throw std::invalid_argument("valuation_triple: u below the stabilization bound");

  ValuationTriple t;
  for (long long h = 0; h < i; ++h)
    t.v1 += factor_length(p, m, h, j) - factor_length(p, n, h, j);

  const Int d = rep_degree(p, m, u, j), e = rep_degree(p, n, u, j);
  for (Int a = d + 1; a <= e; ++a) {
    const int cap = capped_level(u, a, p);
    t.v2 += level_length(p, a, cap, i);
    Int pr = 1;  // p^{r-1}
    for (int r = 1; r <= cap; ++r, pr *= p.value())
      if (a % pr == 0 && a / pr <= i) ++t.v3;
  }
  return t;
}

// hypothesis and conclusion of the exponential lower bound:
//   (m-n)/(mn) * (p^t - 1)/(p-1) * j >= 2t  implies  v_p(twist at j) >= t,
// with t = s_p(n,i,j). Compared exactly in integers.
inline std::pair<bool, bool> exponential_bound_check(const Prime& p, long long m, long long n,
                                                     long long i, long long j) {
  if (m <= n || n < 1 || i < 0) throw std::invalid_argument("exponential_bound_check: bad parameters");
  require_coprime(j, p);
  const int t = factor_length(p, n, i, j);
  const bool hyp =
      Int(m - n) * (ipow(p.value(), t) - 1) * j >= Int(2) * t * m * n * (p.value() - 1);
  long long w = 0;
  for (long long h = 0; h < i; ++h)
    w += factor_length(p, m, h, j) - factor_length(p, n, h, j);
  return {hyp, w >= t};
}

// ---------------------------------------------------------------------------
// Intersection of transfer images inside K_q(F_p[x]/(x^n),(x)) over
// n < m <= m_max, realized as a lattice intersection over the relation
// lattice and reported together with the m at which it stabilized.
// ---------------------------------------------------------------------------

struct StableImage {
  FinAbPGroup group;
  long long stabilized_at = 0;
};

inline StableImage stable_image_intersection(const Prime& p, long long n, long long q,
                                             long long m_max) {
  if (n < 1 || m_max <= n) throw std::invalid_argument("stable_image_intersection: bad range");
  if (q <= 0 || q % 2 == 0) return {FinAbPGroup{p.value(), {}}, n + 1};
  const long long i = (q - 1) / 2;

  std::vector<KFactor> target = relative_k_factors(p, n, i);
  const long long dim = (long long)target.size();
  Mat relations(dim, dim);
  for (long long r = 0; r < dim; ++r)
    relations(r, r) = ipow(p.value(), target[(std::size_t)r].exponent);

  auto image_lattice = [&](long long m) {
    TransferMap t = transfer_map(p, m, n, q);
    Mat img(dim, dim);
    for (long long r = 0; r < dim; ++r) {
      const TransferFactor* f = t.find(target[(std::size_t)r].j);
      const int b = target[(std::size_t)r].exponent;
      long long c = b;  // trivial image unless the source factor is nonzero
      if (f && f->source_exp > 0) c = std::min<long long>(f->twist, b);
      img(r, r) = ipow(p.value(), c);
    }
    return img;
  };

  Mat acc = image_lattice(n + 1);
  long long last_change = n + 1;
  for (long long m = n + 2; m <= m_max; ++m) {
    Mat next = lattice_intersection(acc, image_lattice(m));
    if (!lattice_equal(next, acc)) {
      last_change = m;
      acc = std::move(next);
    }
  }
  if (last_change == m_max)
    throw std::runtime_error("stable_image_intersection: no stabilization before m_max");
  FinAbPGroup g =
      FinAbPGroup::from_exponents(p.value(), p_exponents(quotient_invariants(acc, relations), p));
  return {g, last_change};
}

}  // namespace wittkit
