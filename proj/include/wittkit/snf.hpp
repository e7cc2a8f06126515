#pragma once

#include <optional>
#include <vector>

#include "ints.hpp"

namespace wittkit {

// Dense integer matrix, row major. Sizes here are tiny (presentations of
// finite groups, chain complexes at desk scale), so no sparsity games.
struct Mat {
  long long rows = 0, cols = 0;
  std::vector<Int> a;

  Mat() = default;
  Mat(long long r, long long c) : rows(r), cols(c), a(static_cast<std::size_t>(r * c)) {}

  Int& operator()(long long r, long long c) { return a[static_cast<std::size_t>(r * cols + c)]; }
  const Int& operator()(long long r, long long c) const {
    return a[static_cast<std::size_t>(r * cols + c)];
  }

  static Mat identity(long long n) {
    Mat m(n, n);
    for (long long i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  bool is_zero() const {
    for (const Int& x : a)
      if (x != 0) return false;
    return true;
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("Mat: size mismatch in product");
    Mat r(x.rows, y.cols);
    for (long long i = 0; i < x.rows; ++i)
      for (long long k = 0; k < x.cols; ++k) {
        const Int& f = x(i, k);
        if (f == 0) continue;
        for (long long j = 0; j < y.cols; ++j) r(i, j) += f * y(k, j);
      }
    return r;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols)
      throw std::invalid_argument("Mat: size mismatch in difference");
    Mat r(x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
  }
  friend bool operator==(const Mat&, const Mat&) = default;
};

inline Mat hcat(const Mat& x, const Mat& y) {
  if (x.rows != y.rows) throw std::invalid_argument("hcat: row mismatch");
  Mat r(x.rows, x.cols + y.cols);
  for (long long i = 0; i < x.rows; ++i) {
    for (long long j = 0; j < x.cols; ++j) r(i, j) = x(i, j);
    for (long long j = 0; j < y.cols; ++j) r(i, x.cols + j) = y(i, j);
  }
  return r;
}

// Smith normal form U*A*V = D with U, V unimodular and the diagonal of D
// non-negative with d_1 | d_2 | ... Classic pivot-and-reduce; entries are
// exact so intermediate growth is harmless at these sizes.
struct Smith {
  Mat U, D, V;
  long long rank = 0;
};

inline Smith smith_normal_form(Mat A) {
  const long long m = A.rows, n = A.cols;
  Mat U = Mat::identity(m), V = Mat::identity(n);

  auto swap_rows = [&](long long r1, long long r2) {
    if (r1 == r2) return;
    for (long long c = 0; c < n; ++c) std::swap(A(r1, c), A(r2, c));
    for (long long c = 0; c < m; ++c) std::swap(U(r1, c), U(r2, c));
  };
  auto swap_cols = [&](long long c1, long long c2) {
    if (c1 == c2) return;
    for (long long r = 0; r < m; ++r) std::swap(A(r, c1), A(r, c2));
    for (long long r = 0; r < n; ++r) std::swap(V(r, c1), V(r, c2));
  };
  auto row_addmul = [&](long long dst, long long src, const Int& f) {
    for (long long c = 0; c < n; ++c) A(dst, c) += f * A(src, c);
    for (long long c = 0; c < m; ++c) U(dst, c) += f * U(src, c);
  };
  auto col_addmul = [&](long long dst, long long src, const Int& f) {
    for (long long r = 0; r < m; ++r) A(r, dst) += f * A(r, src);
    for (long long r = 0; r < n; ++r) V(r, dst) += f * V(r, src);
  };
  auto negate_row = [&](long long r) {
    for (long long c = 0; c < n; ++c) A(r, c) = -A(r, c);
    for (long long c = 0; c < m; ++c) U(r, c) = -U(r, c);
  };

  long long t = 0;
  while (t < std::min(m, n)) {
    // minimal nonzero pivot in the trailing submatrix
    long long pr = -1, pc = -1;
    for (long long r = t; r < m; ++r)
      for (long long c = t; c < n; ++c) {
        if (A(r, c) == 0) continue;
        if (pr < 0 || abs(A(r, c)) < abs(A(pr, pc))) {
          pr = r;
          pc = c;
        }
      }
    if (pr < 0) break;  // trailing submatrix is zero
    swap_rows(t, pr);
    swap_cols(t, pc);

    bool settled = false;
    while (!settled) {
      settled = true;
      for (long long r = t + 1; r < m; ++r) {
        if (A(r, t) == 0) continue;
        Int q = A(r, t) / A(t, t);  // truncated: |remainder| < |pivot|
        row_addmul(r, t, -q);
        if (A(r, t) != 0) {
          swap_rows(t, r);
          settled = false;
          break;
        }
      }
      if (!settled) continue;
      for (long long c = t + 1; c < n; ++c) {
        if (A(t, c) == 0) continue;
        Int q = A(t, c) / A(t, t);
        col_addmul(c, t, -q);
        if (A(t, c) != 0) {
          swap_cols(t, c);
          settled = false;
          break;
        }
      }
      if (!settled) continue;
      // pivot must divide the rest of the submatrix
      for (long long r = t + 1; r < m && settled; ++r)
        for (long long c = t + 1; c < n && settled; ++c)
          if (A(r, c) % A(t, t) != 0) {
            row_addmul(t, r, 1);
            settled = false;
          }
    }
    ++t;
  }
  for (long long i = 0; i < std::min(m, n); ++i)
    if (A(i, i) < 0) negate_row(i);

  Smith s{std::move(U), std::move(A), std::move(V), 0};
  for (long long i = 0; i < std::min(m, n); ++i)
    if (s.D(i, i) != 0) ++s.rank;
  return s;
}

// basis of the integer kernel lattice of A, one column per basis vector
inline Mat kernel_basis(const Mat& A) {
  Smith s = smith_normal_form(A);
  Mat K(A.cols, A.cols - s.rank);
  for (long long j = s.rank; j < A.cols; ++j)
    for (long long r = 0; r < A.cols; ++r) K(r, j - s.rank) = s.V(r, j);
  return K;
}

// integer solution X of A*X = B, if one exists
inline std::optional<Mat> solve_columns(const Mat& A, const Mat& B) {
  if (A.rows != B.rows) throw std::invalid_argument("solve_columns: row mismatch");
  Smith s = smith_normal_form(A);
  Mat C = s.U * B;
  Mat Y(A.cols, B.cols);
  for (long long col = 0; col < B.cols; ++col) {
    for (long long i = 0; i < A.rows; ++i) {
      Int d = (i < std::min(A.rows, A.cols)) ? s.D(i, i) : Int(0);
      if (d == 0) {
        if (C(i, col) != 0) return std::nullopt;
      } else if (i < A.cols) {
        if (C(i, col) % d != 0) return std::nullopt;
        Y(i, col) = C(i, col) / d;
      }
    }
  }
  return s.V * Y;
}

// invariant factors of Z^rows / column-lattice(A): the nonzero diagonal of
// the Smith form followed by one zero per free generator
inline std::vector<Int> invariant_factors(const Mat& A) {
  Smith s = smith_normal_form(A);
  std::vector<Int> inv;
  for (long long i = 0; i < s.rank; ++i) inv.push_back(s.D(i, i));
  for (long long i = s.rank; i < A.rows; ++i) inv.push_back(0);
  return inv;
}

// exact determinant (Bareiss), used to certify unimodularity in tests
inline Int determinant(Mat A) {
  if (A.rows != A.cols) throw std::invalid_argument("determinant: matrix not square");
  const long long n = A.rows;
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (long long k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      long long r = k + 1;
      while (r < n && A(r, k) == 0) ++r;
      if (r == n) return 0;
      for (long long c = 0; c < n; ++c) std::swap(A(k, c), A(r, c));
      sign = -sign;
    }
    for (long long i = k + 1; i < n; ++i)
      for (long long j = k + 1; j < n; ++j)
        A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

// --- lattice helpers -------------------------------------------------------
// Lattices are given by a matrix whose columns form a basis.

inline bool lattice_contains(const Mat& basis, const Mat& vectors) {
  return solve_columns(basis, vectors).has_value();
}

inline bool lattice_equal(const Mat& a, const Mat& b) {
  return lattice_contains(a, b) && lattice_contains(b, a);
}

// intersection of two lattices via the kernel of the stacked matrix [A | -B]
inline Mat lattice_intersection(const Mat& A, const Mat& B) {
  if (A.rows != B.rows) throw std::invalid_argument("lattice_intersection: row mismatch");
  Mat negB(B.rows, B.cols);
  for (std::size_t i = 0; i < B.a.size(); ++i) negB.a[i] = -B.a[i];
  Mat K = kernel_basis(hcat(A, negB));
  Mat coeff(A.cols, K.cols);
  for (long long r = 0; r < A.cols; ++r)
    for (long long c = 0; c < K.cols; ++c) coeff(r, c) = K(r, c);
  return A * coeff;
}

// invariant factors of L/N for a sublattice N of L (both given by bases)
inline std::vector<Int> quotient_invariants(const Mat& L, const Mat& N) {
  auto W = solve_columns(L, N);
  if (!W) throw std::invalid_argument("quotient_invariants: N is not contained in L");
  return invariant_factors(*W);
}

}  // namespace wittkit
