#pragma once

// Exact integer/rational linear algebra: Hermite and Smith normal forms,
// Bareiss determinant, rational solving, and mod-p kernels.

#include <algorithm>
#include <optional>
#include <utility>

#include "symlat/common.hpp"

namespace symlat {

// Row-style Hermite normal form of the row span of A. Pivots positive,
// entries above a pivot reduced into [0, pivot). Zero rows dropped.
inline MatZ hnf(const MatZ& A) {
  int m = A.rows(), n = A.cols();
  std::vector<std::vector<Int>> rows(m, std::vector<Int>(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) rows[i][j] = A(i, j);

  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    // Eliminate below `rank` via gcd steps on column `col`.
    int piv = -1;
    for (int i = rank; i < m; ++i)
      if (rows[i][col] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int i = rank + 1; i < m; ++i) {
      while (rows[i][col] != 0) {
        Int q = rows[rank][col] / rows[i][col];  // truncated division is fine for gcd loop
        for (int j = 0; j < n; ++j) rows[rank][j] -= q * rows[i][j];
        std::swap(rows[rank], rows[i]);
      }
    }
    if (rows[rank][col] < 0)
      for (int j = 0; j < n; ++j) rows[rank][j] = -rows[rank][j];
    ++rank;
  }
  // Reduce entries above each pivot.
  for (int i = rank - 1; i >= 0; --i) {
    int col = 0;
    while (col < n && rows[i][col] == 0) ++col;
    if (col == n) continue;
    for (int r = 0; r < i; ++r) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[i][col].get_mpz_t());
      if (q != 0)
        for (int j = 0; j < n; ++j) rows[r][j] -= q * rows[i][j];
    }
  }
  MatZ H(rank, n);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < n; ++j) H(i, j) = rows[i][j];
  return H;
}

// Smith normal form diagonal of A, with optional column transform V
// (so that for the quotient ZZ^n / rowspan(A), x |-> x*V gives coordinates
// in prod ZZ/d_i). Returns the diagonal entries d_1 | d_2 | ... (length = cols).
inline std::vector<Int> snf(const MatZ& A, MatZ* V_out = nullptr) {
  int m = A.rows(), n = A.cols();
  MatZ W = A;
  MatZ V = MatZ::identity(n);

  auto row_sub = [&](int dst, int src, const Int& q) {
    for (int j = 0; j < n; ++j) W(dst, j) -= q * W(src, j);
  };
  auto col_sub = [&](int dst, int src, const Int& q) {
    for (int i = 0; i < m; ++i) W(i, dst) -= q * W(i, src);
    for (int i = 0; i < n; ++i) V(i, dst) -= q * V(i, src);
  };
  auto row_swap = [&](int a, int b) {
    for (int j = 0; j < n; ++j) std::swap(W(a, j), W(b, j));
  };
  auto col_swap = [&](int a, int b) {
    for (int i = 0; i < m; ++i) std::swap(W(i, a), W(i, b));
    for (int i = 0; i < n; ++i) std::swap(V(i, a), V(i, b));
  };
  auto col_neg = [&](int c) {
    for (int i = 0; i < m; ++i) W(i, c) = -W(i, c);
    for (int i = 0; i < n; ++i) V(i, c) = -V(i, c);
  };

  int t = std::min(m, n);
  for (int k = 0; k < t; ++k) {
    // Repeat with the smallest-magnitude pivot until row/column k are clear
    // and the pivot divides the trailing submatrix; every restart strictly
    // shrinks the pivot, so this terminates.
    for (;;) {
      int pi = -1, pj = -1;
      for (int i = k; i < m; ++i)
        for (int j = k; j < n; ++j)
          if (W(i, j) != 0 && (pi < 0 || abs(W(i, j)) < abs(W(pi, pj)))) { pi = i; pj = j; }
      if (pi < 0) break;  // trailing submatrix is zero
      if (pi != k) row_swap(pi, k);
      if (pj != k) col_swap(pj, k);
      bool clean = true;
      for (int i = k + 1; i < m; ++i) {
        if (W(i, k) == 0) continue;
        row_sub(i, k, W(i, k) / W(k, k));
        if (W(i, k) != 0) clean = false;  // remainder, smaller than the pivot
      }
      for (int j = k + 1; j < n; ++j) {
        if (W(k, j) == 0) continue;
        col_sub(j, k, W(k, j) / W(k, k));
        if (W(k, j) != 0) clean = false;
      }
      if (!clean) continue;
      int bi = -1;
      for (int i = k + 1; i < m && bi < 0; ++i)
        for (int j = k + 1; j < n; ++j)
          if (W(i, j) % W(k, k) != 0) { bi = i; break; }
      if (bi < 0) break;
      // Fold the offending row into row k; the next pass leaves a remainder.
      for (int j = 0; j < n; ++j) W(k, j) += W(bi, j);
    }
    if (W(k, k) < 0) col_neg(k);
  }
  std::vector<Int> d(n);
  for (int j = 0; j < n; ++j) d[j] = (j < t) ? W(j, j) : Int(0);
  if (V_out) *V_out = V;
  return d;
}

// Bareiss fraction-free determinant.
inline Int determinant_z(const MatZ& A) {
  int n = A.rows();
  if (n == 0) return 1;
  MatZ M = A;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (M(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (M(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(M(k, j), M(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        M(i, j) = t / prev;  // exact division (Bareiss)
      }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

// Gaussian elimination over the rationals. Returns empty optional when singular.
inline std::optional<MatQ> inverse_q(const MatQ& A) {
  int n = A.rows();
  MatQ M = A, inv = MatQ::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (M(i, col) != 0) { piv = i; break; }
    if (piv < 0) return std::nullopt;
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(M(col, j), M(piv, j));
        std::swap(inv(col, j), inv(piv, j));
      }
    Rat d = M(col, col);
    for (int j = 0; j < n; ++j) { M(col, j) /= d; inv(col, j) /= d; }
    for (int i = 0; i < n; ++i) {
      if (i == col || M(i, col) == 0) continue;
      Rat f = M(i, col);
      for (int j = 0; j < n; ++j) {
        M(i, j) -= f * M(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

inline std::optional<std::vector<Rat>> solve_q(const MatQ& A, const std::vector<Rat>& b) {
  auto inv = inverse_q(A);
  if (!inv) return std::nullopt;
  return *inv * b;
}

// Solve A x = b mod m for A invertible mod m, via the exact rational solution
// (denominators divide det(A), a unit mod m). Throws NotAUnitError otherwise.
inline std::vector<Int> solve_mod(const MatZ& A, const std::vector<Int>& b, const Int& m) {
  int n = A.rows();
  std::vector<Rat> bq(n);
  for (int i = 0; i < n; ++i) bq[i] = Rat(b[i]);
  auto x = solve_q(to_rational(A), bq);
  if (!x) throw NotAUnitError("matrix singular over Q, hence mod m");
  std::vector<Int> out(n);
  for (int i = 0; i < n; ++i) {
    Int num = mod_reduce((*x)[i].get_num(), m);
    Int den = mod_inverse(mod_reduce((*x)[i].get_den(), m), m);
    out[i] = mod_reduce(num * den, m);
  }
  return out;
}

// Reduced row echelon form mod prime p; returns rank, transforms M in place.
inline int rref_mod_p(MatZ& M, const Int& p) {
  int m = M.rows(), n = M.cols();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = mod_reduce(M(i, j), p);
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int piv = -1;
    for (int i = rank; i < m; ++i)
      if (M(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < n; ++j) std::swap(M(rank, j), M(piv, j));
    Int inv = mod_inverse(M(rank, col), p);
    for (int j = 0; j < n; ++j) M(rank, j) = mod_reduce(M(rank, j) * inv, p);
    for (int i = 0; i < m; ++i) {
      if (i == rank || M(i, col) == 0) continue;
      Int f = M(i, col);
      for (int j = 0; j < n; ++j) M(i, j) = mod_reduce(M(i, j) - f * M(rank, j), p);
    }
    ++rank;
  }
  return rank;
}

inline int rank_mod_p(const MatZ& A, const Int& p) {
  MatZ M = A;
  return rref_mod_p(M, p);
}

// Kernel of A (as a map x -> A x) mod prime p; returns basis as columns-of-coeff vectors.
inline std::vector<std::vector<Int>> kernel_mod_p(const MatZ& A, const Int& p) {
  MatZ M = A;
  int m = M.rows(), n = M.cols();
  rref_mod_p(M, p);
  std::vector<int> pivot_col_of_row;
  std::vector<bool> is_pivot(n, false);
  for (int i = 0; i < m; ++i) {
    int j = 0;
    while (j < n && M(i, j) == 0) ++j;
    if (j < n) { pivot_col_of_row.push_back(j); is_pivot[j] = true; }
  }
  std::vector<std::vector<Int>> basis;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Int> v(n, Int(0));
    v[free] = 1;
    for (size_t r = 0; r < pivot_col_of_row.size(); ++r)
      v[pivot_col_of_row[r]] = mod_reduce(-M(static_cast<int>(r), free), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Membership of v in the column space of the rref matrix R (mod p).
// Returns the span dimension of a set of vectors given as rows.
inline int span_rank_mod_p(const std::vector<std::vector<Int>>& vecs, const Int& p) {
  if (vecs.empty()) return 0;
  MatZ M(static_cast<int>(vecs.size()), static_cast<int>(vecs[0].size()));
  for (size_t i = 0; i < vecs.size(); ++i)
    for (size_t j = 0; j < vecs[0].size(); ++j) M(static_cast<int>(i), static_cast<int>(j)) = vecs[i][j];
  return rank_mod_p(M, p);
}

// Chinese remainder: x = a mod ma, x = b mod mb (coprime moduli).
inline Int crt(const Int& a, const Int& ma, const Int& b, const Int& mb) {
  Int inv = mod_inverse(mod_reduce(ma, mb), mb);
  Int t = mod_reduce((b - a) * inv, mb);
  return a + ma * t;
}

}  // namespace symlat
