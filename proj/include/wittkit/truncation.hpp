#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "arith.hpp"

namespace wittkit {

// Finite set of positive integers stable under division. Indexes the
// components of big Witt vectors; the empty set is allowed and carries the
// zero ring. Construction validates division-stability instead of silently
// completing the input; use closure() to complete a seed set explicitly.
class TruncationSet {
 public:
  TruncationSet() = default;

  explicit TruncationSet(std::vector<long long> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    for (std::size_t k = 0; k < members_.size(); ++k) {
      long long s = members_[k];
      if (s < 1) throw std::invalid_argument("TruncationSet: members must be positive");
      if (k > 0 && members_[k - 1] == s)
        throw std::invalid_argument("TruncationSet: duplicate member");
    }
    for (long long s : members_)
      for (long long d = 1; d * d <= s; ++d)
        if (s % d == 0 && (!contains(d) || !contains(s / d)))
          throw std::invalid_argument("TruncationSet: not stable under division");
  }

  // {1, ..., r}; r = 0 gives the empty set
  static TruncationSet segment(long long r) {
    if (r < 0) throw std::invalid_argument("segment: need r >= 0");
    std::vector<long long> v(static_cast<std::size_t>(r));
    for (long long k = 0; k < r; ++k) v[static_cast<std::size_t>(k)] = k + 1;
    return TruncationSet(std::move(v));
  }

  // all divisors of r
  static TruncationSet divisors_of(long long r) {
    if (r < 1) throw std::invalid_argument("divisors_of: need r >= 1");
    std::vector<long long> v;
    for (long long d = 1; d * d <= r; ++d)
      if (r % d == 0) {
        v.push_back(d);
        if (d != r / d) v.push_back(r / d);
      }
    return TruncationSet(std::move(v));
  }

  // smallest division-stable set containing the seed
  static TruncationSet closure(const std::vector<long long>& seed) {
    std::set<long long> acc;
    for (long long s : seed) {
      if (s < 1) throw std::invalid_argument("closure: members must be positive");
      for (long long d = 1; d * d <= s; ++d)
        if (s % d == 0) {
          acc.insert(d);
          acc.insert(s / d);
        }
    }
    return TruncationSet(std::vector<long long>(acc.begin(), acc.end()));
  }

  bool contains(long long s) const {
    return std::binary_search(members_.begin(), members_.end(), s);
  }
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  const std::vector<long long>& members() const { return members_; }

  bool subset_of(const TruncationSet& other) const {
    for (long long s : members_)
      if (!other.contains(s)) return false;
    return true;
  }

  // S/s = { t : s*t in S }; division-stable by construction
  TruncationSet quotient(long long s) const {
    if (s < 1) throw std::invalid_argument("quotient: need s >= 1");
    std::vector<long long> v;
    for (long long member : members_)
      if (member % s == 0) v.push_back(member / s);
    return TruncationSet(std::move(v));
  }

  std::string str() const {
    std::string out = "{";
    for (std::size_t k = 0; k < members_.size(); ++k) {
      if (k) out += ",";
      out += std::to_string(members_[k]);
    }
    return out + "}";
  }

  friend bool operator==(const TruncationSet&, const TruncationSet&) = default;

 private:
  std::vector<long long> members_;
};

// u_p(S, j) = card( S ∩ {j, pj, p^2 j, ...} ); nonzero iff j is in S
inline int u_p_of(const TruncationSet& S, long long j, const Prime& p) {
  require_coprime(j, p);
  int c = 0;
  if (S.empty()) return 0;
  long long biggest = S.members().back();
  for (Int t = j; t <= biggest; t *= p.value())
    if (S.contains(t.convert_to<long long>())) ++c;
  return c;
}

// the p-typical set {1, p, ..., p^{u-1}}
inline TruncationSet p_typical_set(const Prime& p, int u) {
  if (u < 0) throw std::invalid_argument("p_typical_set: need u >= 0");
  std::vector<long long> v;
  Int t = 1;
  for (int k = 0; k < u; ++k) {
    if (t > (1LL << 62)) throw std::invalid_argument("p_typical_set: level too large");
    v.push_back(t.convert_to<long long>());
    t *= p.value();
  }
  return TruncationSet(std::move(v));
}

}  // namespace wittkit
