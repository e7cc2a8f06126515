#pragma once

#include <map>
#include <vector>

#include "snf.hpp"

namespace wittkit {

// ---------------------------------------------------------------------------
// The cyclic bar construction of the pointed monoid {0, 1, x, ..., x^{m-1}}
// with x^m = 0, in a fixed weight i, realized as its normalized reduced
// chain complex over Z.
//
// A k-simplex is an exponent tuple (i_0, ..., i_k) with entries in
// [0, m-1] summing to i. Degeneracies insert the unit after positions
// 0..k, so the nondegenerate tuples are those with i_t >= 1 for t >= 1.
// Faces multiply adjacent entries, the last one cyclically into position 0;
// a product reaching x^m hits the basepoint and contributes zero.
// ---------------------------------------------------------------------------

struct BarTuple {
  std::vector<int> exps;
  int degree() const { return static_cast<int>(exps.size()) - 1; }
  long long weight() const {
    long long w = 0;
    for (int e : exps) w += e;
    return w;
  }
  friend bool operator==(const BarTuple&, const BarTuple&) = default;
  friend bool operator<(const BarTuple& a, const BarTuple& b) { return a.exps < b.exps; }
};

struct ChainComplex {
  long long m = 0;
  long long weight = 0;
  std::vector<std::vector<BarTuple>> basis;  // by degree, 0 .. weight
  std::vector<Mat> boundary;                 // boundary[k] : C_k -> C_{k-1}

  long long dim(long long k) const {
    if (k < 0 || k >= (long long)basis.size()) return 0;
    return (long long)basis[(std::size_t)k].size();
  }
};

namespace detail {
inline void enumerate_tuples(long long m, long long weight, int degree,
                             std::vector<BarTuple>& out) {
  // i_0 in [0, m-1], i_1..i_k in [1, m-1], lexicographic
  std::vector<int> cur(static_cast<std::size_t>(degree) + 1, 0);
  auto rec = [&](auto&& self, int pos, long long remaining) -> void {
    if (pos == degree + 1) {
      if (remaining == 0) out.push_back(BarTuple{cur});
      return;
    }
    const int lo = (pos == 0) ? 0 : 1;
    for (int e = lo; e < m && e <= remaining; ++e) {
      cur[(std::size_t)pos] = e;
      self(self, pos + 1, remaining - e);
    }
  };
  rec(rec, 0, weight);
}
}  // namespace detail

inline ChainComplex bar_complex(long long m, long long i) {
  if (m < 2 || i < 1) throw std::invalid_argument("bar_complex: need m >= 2, i >= 1");
  ChainComplex c;
  c.m = m;
  c.weight = i;
  c.basis.resize(static_cast<std::size_t>(i) + 1);
  std::vector<std::map<BarTuple, long long>> index(static_cast<std::size_t>(i) + 1);
  for (long long k = 0; k <= i; ++k) {
    detail::enumerate_tuples(m, i, static_cast<int>(k), c.basis[(std::size_t)k]);
    for (std::size_t idx = 0; idx < c.basis[(std::size_t)k].size(); ++idx)
      index[(std::size_t)k][c.basis[(std::size_t)k][idx]] = (long long)idx;
  }

  c.boundary.resize(static_cast<std::size_t>(i) + 1);
  c.boundary[0] = Mat(0, c.dim(0));
  for (long long k = 1; k <= i; ++k) {
    Mat b(c.dim(k - 1), c.dim(k));
    for (std::size_t col = 0; col < c.basis[(std::size_t)k].size(); ++col) {
      const std::vector<int>& e = c.basis[(std::size_t)k][col].exps;
      for (long long t = 0; t <= k; ++t) {
        std::vector<int> face;
        face.reserve(e.size() - 1);
        if (t < k) {
          for (long long s = 0; s < (long long)e.size(); ++s) {
            if (s == t) {
              face.push_back(e[(std::size_t)t] + e[(std::size_t)t + 1]);
              ++s;
            } else {
              face.push_back(e[(std::size_t)s]);
            }
          }
        } else {
          face.push_back(e.back() + e[0]);
          for (long long s = 1; s + 1 < (long long)e.size(); ++s)
            face.push_back(e[(std::size_t)s]);
        }
        bool basepoint = false;
        for (int x : face)
          if (x >= m) basepoint = true;
        if (basepoint) continue;
        long long row = index[(std::size_t)(k - 1)].at(BarTuple{face});
        b(row, (long long)col) += (t % 2 == 0) ? 1 : -1;
      }
    }
    c.boundary[(std::size_t)k] = std::move(b);
  }

  for (long long k = 2; k <= i; ++k)
    if (!(c.boundary[(std::size_t)(k - 1)] * c.boundary[(std::size_t)k]).is_zero())
      throw std::logic_error("bar_complex: boundary squared is nonzero");
  return c;
}

// ---------------------------------------------------------------------------
// Integral homology via Smith normal form: H_k = ker(d_k)/im(d_{k+1}).
// Cycle lattices are saturated, so the image is expressed in cycle
// coordinates by an exact solve and reduced by Smith normal form.
// ---------------------------------------------------------------------------

struct HomologyGroup {
  long long rank = 0;
  std::vector<Int> torsion;  // ascending, each >= 2
  bool trivial() const { return rank == 0 && torsion.empty(); }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

using Homology = std::vector<HomologyGroup>;

struct HomologyData {
  Homology groups;
  std::vector<Mat> cycles;     // per degree: basis of ker(d_k), n_k x z_k
  std::vector<Mat> relations;  // per degree: im(d_{k+1}) in cycle coordinates
};

inline HomologyData homology_data(const ChainComplex& c) {
  const long long top = (long long)c.basis.size() - 1;
  HomologyData h;
  h.groups.resize(static_cast<std::size_t>(top) + 1);
  h.cycles.resize(static_cast<std::size_t>(top) + 1);
  h.relations.resize(static_cast<std::size_t>(top) + 1);
  for (long long k = 0; k <= top; ++k) {
    Mat Z = kernel_basis(c.boundary[(std::size_t)k]);
    Mat B = (k < top) ? c.boundary[(std::size_t)(k + 1)] : Mat(c.dim(k), 0);
    auto W = solve_columns(Z, B);
    if (!W) throw std::logic_error("homology_data: boundaries are not cycles");
    HomologyGroup g;
    Smith s = smith_normal_form(*W);
    g.rank = Z.cols - s.rank;
    for (long long d = 0; d < s.rank; ++d)
      if (s.D(d, d) > 1) g.torsion.push_back(s.D(d, d));
    std::sort(g.torsion.begin(), g.torsion.end());
    h.groups[(std::size_t)k] = std::move(g);
    h.cycles[(std::size_t)k] = std::move(Z);
    h.relations[(std::size_t)k] = std::move(*W);
  }
  return h;
}

inline Homology homology(const ChainComplex& c) { return homology_data(c).groups; }

// Homotopy-type prediction from the cofibration sequence over the circle,
// with d = [(i-1)/m]:
//   m does not divide i: Z in degrees 2d and 2d+1;
//   i = m(d+1): Z/m in degree 2d+1 only (the attaching map has covering
//   degree m; this multiplicity is itself checked against the simplicial
//   computation in the tests rather than trusted).
inline Homology predicted_homology(long long m, long long i) {
  if (m < 2 || i < 1) throw std::invalid_argument("predicted_homology: need m >= 2, i >= 1");
  const long long d = (i - 1) / m;
  Homology h(static_cast<std::size_t>(i) + 1);
  if (i % m == 0) {
    h[(std::size_t)(2 * d + 1)].torsion.push_back(m);
  } else {
    h[(std::size_t)(2 * d)].rank = 1;
    h[(std::size_t)(2 * d + 1)].rank = 1;
  }
  return h;
}

inline bool homology_equal(const Homology& a, const Homology& b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    const HomologyGroup ga = (k < a.size()) ? a[k] : HomologyGroup{};
    const HomologyGroup gb = (k < b.size()) ? b[k] : HomologyGroup{};
    if (!(ga == gb)) return false;
  }
  return true;
}

inline long long euler_characteristic_of_basis(const ChainComplex& c) {
  long long chi = 0;
  for (std::size_t k = 0; k < c.basis.size(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * (long long)c.basis[k].size();
  return chi;
}
inline long long euler_characteristic_of_homology(const Homology& h) {
  long long chi = 0;
  for (std::size_t k = 0; k < h.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * h[k].rank;
  return chi;
}

// ---------------------------------------------------------------------------
// The chain map induced by the truncation projection of pointed monoids:
// entrywise the identity on tuples whose entries all stay below n, zero on
// the rest. Verified to commute with the boundaries; the matrices on
// homology come from lifting through the cycle bases.
// ---------------------------------------------------------------------------

struct InducedMap {
  ChainComplex source, target;
  std::vector<Mat> chain;        // per degree, dim_target x dim_source
  HomologyData source_homology, target_homology;
  std::vector<Mat> on_homology;  // per degree, in cycle-basis coordinates
};

inline InducedMap induced_map(long long m, long long n, long long i) {
  if (m <= n || n < 2) throw std::invalid_argument("induced_map: need m > n >= 2");
  InducedMap f;
  f.source = bar_complex(m, i);
  f.target = bar_complex(n, i);

  const long long top = (long long)f.source.basis.size() - 1;
  std::vector<std::map<BarTuple, long long>> tindex(f.target.basis.size());
  for (std::size_t k = 0; k < f.target.basis.size(); ++k)
    for (std::size_t idx = 0; idx < f.target.basis[k].size(); ++idx)
      tindex[k][f.target.basis[k][idx]] = (long long)idx;

  f.chain.resize(static_cast<std::size_t>(top) + 1);
  for (long long k = 0; k <= top; ++k) {
    Mat phi(f.target.dim(k), f.source.dim(k));
    for (std::size_t col = 0; col < f.source.basis[(std::size_t)k].size(); ++col) {
      const BarTuple& tup = f.source.basis[(std::size_t)k][col];
      bool survives = true;
      for (int e : tup.exps)
        if (e >= n) survives = false;
      if (!survives) continue;
      phi(tindex[(std::size_t)k].at(tup), (long long)col) = 1;
    }
    f.chain[(std::size_t)k] = std::move(phi);
  }

  for (long long k = 1; k <= top; ++k) {
    Mat lhs = f.target.boundary[(std::size_t)k] * f.chain[(std::size_t)k];
    Mat rhs = f.chain[(std::size_t)(k - 1)] * f.source.boundary[(std::size_t)k];
    if (!(lhs == rhs)) throw std::logic_error("induced_map: not a chain map");
  }

  f.source_homology = homology_data(f.source);
  f.target_homology = homology_data(f.target);
  f.on_homology.resize(static_cast<std::size_t>(top) + 1);
  for (long long k = 0; k <= top; ++k) {
    Mat img = f.chain[(std::size_t)k] * f.source_homology.cycles[(std::size_t)k];
    auto Y = solve_columns(f.target_homology.cycles[(std::size_t)k], img);
    if (!Y) throw std::logic_error("induced_map: image of a cycle is not a cycle");
    f.on_homology[(std::size_t)k] = std::move(*Y);
  }
  return f;
}

// equality of two maps into the presented group H = Z^z / relations
inline bool same_homology_map(const HomologyData& target, long long degree, const Mat& A,
                              const Mat& B) {
  return solve_columns(target.relations[(std::size_t)degree], A - B).has_value();
}

}  // namespace wittkit
