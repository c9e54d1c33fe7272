#pragma once

// Exact lattice computations from Gram matrices alone: LLL reduction in the
// delta-free form (|mu_ij| <= 1/2 and |b_i*|^2 <= 2|b_{i+1}*|^2), Babai
// nearest-plane on cosets, and exhaustive norm-1 enumeration.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "symlat/linalg.hpp"

namespace symlat {

struct GramLattice {
  MatZ gram;
};

struct ReductionResult {
  MatZ gram_reduced;
  MatZ transform;                // rows: new basis in terms of old basis
  std::vector<Rat> gso_norms;    // |b_i*|^2
  MatQ mu;                       // lower triangular
};

namespace detail {

// Gram-Schmidt data from an integer Gram matrix. Throws on non-positive B.
inline void gso_from_gram(const MatZ& g, MatQ& mu, std::vector<Rat>& B) {
  int n = g.rows();
  mu = MatQ(n, n);
  B.assign(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      Rat s(g(i, j));
      for (int l = 0; l < j; ++l) s -= mu(j, l) * mu(i, l) * B[l];
      mu(i, j) = s / B[j];
    }
    Rat s(g(i, i));
    for (int l = 0; l < i; ++l) s -= mu(i, l) * mu(i, l) * B[l];
    if (s <= 0) throw NotPositiveDefinite();
    B[i] = s;
    mu(i, i) = 1;
  }
}

}  // namespace detail

inline ReductionResult lll_reduce(const GramLattice& L) {
  int n = L.gram.rows();
  MatZ g = L.gram;
  MatZ U = MatZ::identity(n);
  MatQ mu;
  std::vector<Rat> B;
  detail::gso_from_gram(g, mu, B);

  auto size_reduce = [&](int i, int j) {
    Int r = round_nearest(mu(i, j));
    if (r == 0) return;
    // row_i -= r * row_j in basis space; update gram symmetrically.
    for (int l = 0; l < n; ++l) U(i, l) -= r * U(j, l);
    Int gii = g(i, i) - 2 * r * g(i, j) + r * r * g(j, j);
    for (int l = 0; l < n; ++l) {
      if (l == i) continue;
      g(i, l) -= r * g(j, l);
      g(l, i) = g(i, l);
    }
    g(i, i) = gii;
    Rat rq(r);
    for (int l = 0; l <= j; ++l) mu(i, l) -= rq * mu(j, l);
  };

  int kk = 1;
  while (kk < n) {
    for (int j = kk - 1; j >= 0; --j) size_reduce(kk, j);
    if (kk > 0 && B[kk - 1] > 2 * B[kk]) {
      // Swap rows kk-1, kk and update GSO incrementally.
      int k = kk;
      Rat muk = mu(k, k - 1);
      Rat Bnew = B[k] + muk * muk * B[k - 1];
      Rat mu_new = muk * B[k - 1] / Bnew;
      Rat Bk_new = B[k - 1] * B[k] / Bnew;
      for (int l = 0; l < n; ++l) std::swap(U(k - 1, l), U(k, l));
      for (int l = 0; l < n; ++l) std::swap(g(k - 1, l), g(k, l));
      for (int l = 0; l < n; ++l) std::swap(g(l, k - 1), g(l, k));
      for (int l = 0; l < k - 1; ++l) std::swap(mu(k - 1, l), mu(k, l));
      for (int i = k + 1; i < n; ++i) {
        Rat a = mu(i, k - 1), b = mu(i, k);
        mu(i, k - 1) = a * mu_new + b * (1 - muk * mu_new);
        mu(i, k) = a - b * muk;
      }
      mu(k, k - 1) = mu_new;
      B[k - 1] = Bnew;
      B[k] = Bk_new;
      if (kk > 1) --kk;
    } else {
      ++kk;
    }
  }

  ReductionResult res;
  res.gram_reduced = g;
  res.transform = U;
  res.gso_norms = B;
  res.mu = mu;
  return res;
}

inline Int determinant(const GramLattice& L) { return determinant_z(L.gram); }

inline bool is_unimodular(const GramLattice& L) { return determinant(L) == 1; }

// Shortest-ish representative of the coset c + m*L via LLL + nearest plane.
// Returns the coset member of norm 1 if one exists; None is a proof of
// nonexistence provided m >= 2^(n/2) + 1.
inline std::optional<std::vector<Int>> coset_short_vector(const GramLattice& L, const Int& m,
                                                          const std::vector<Int>& c) {
  int n = L.gram.rows();
  // m >= 2^(n/2) + 1  <=>  (m-1)^2 >= 2^n, checked exactly.
  {
    Int lhs = (m - 1) * (m - 1), rhs = Int(1) << n;
    if (lhs < rhs) throw ModulusTooSmall();
  }
  auto red = lll_reduce(GramLattice{L.gram});
  // Reduced basis of m*L in original coordinates: rows m * U.
  // Nearest plane against target c, computing inner products via the Gram.
  MatQ gq = to_rational(L.gram);
  auto dot = [&](const std::vector<Rat>& x, const std::vector<Rat>& y) {
    Rat s(0);
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      Rat row(0);
      for (int j = 0; j < n; ++j) row += gq(i, j) * y[j];
      s += x[i] * row;
    }
    return s;
  };
  // GSO vectors of the reduced basis of m*L, as rational coordinate vectors.
  std::vector<std::vector<Rat>> b(n, std::vector<Rat>(n)), bstar(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[i][j] = Rat(m * red.transform(i, j));
  std::vector<Rat> Bs(n);
  for (int i = 0; i < n; ++i) {
    bstar[i] = b[i];
    for (int j = 0; j < i; ++j) {
      Rat mu = dot(b[i], bstar[j]) / Bs[j];
      for (int l = 0; l < n; ++l) bstar[i][l] -= mu * bstar[j][l];
    }
    Bs[i] = dot(bstar[i], bstar[i]);
  }
  std::vector<Rat> t(n);
  for (int i = 0; i < n; ++i) t[i] = Rat(c[i]);
  for (int i = n - 1; i >= 0; --i) {
    Rat mu = dot(t, bstar[i]) / Bs[i];
    Int r = round_nearest(mu);
    if (r != 0)
      for (int l = 0; l < n; ++l) t[l] -= Rat(r) * b[i][l];
  }
  std::vector<Int> y(n);
  for (int i = 0; i < n; ++i) {
    // Exactly integral by construction.
    y[i] = t[i].get_num();
  }
  // Norm check.
  Int norm = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) norm += y[i] * L.gram(i, j) * y[j];
  if (norm == 1) return y;
  return std::nullopt;
}

// All v with v^T gram v = 1, by Fincke-Pohst over the exact quadratic-form
// decomposition Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2. Output sorted
// lexicographically. Exponential worst case; desk-scale oracle.
inline std::vector<std::vector<Int>> enumerate_norm_one(const GramLattice& L) {
  int n = L.gram.rows();
  // Cholesky-style decomposition in rationals.
  MatQ q = to_rational(L.gram);
  for (int i = 0; i < n; ++i) {
    if (q(i, i) <= 0) throw NotPositiveDefinite();
    for (int j = i + 1; j < n; ++j) {
      Rat f = q(i, j) / q(i, i);
      for (int l = j; l < n; ++l) q(j, l) -= f * q(i, l);
      q(i, j) = f;
    }
  }
  std::vector<std::vector<Int>> out;
  std::vector<Int> x(n, Int(0));
  // Recurse from the last coordinate down, exact pruning at every level.
  auto rec = [&](auto&& self, int i, const Rat& remaining) -> void {
    if (i < 0) {
      if (remaining == 0) out.push_back(x);
      return;
    }
    Rat center(0);
    for (int j = i + 1; j < n; ++j) center += q(i, j) * Rat(x[j]);
    // q(i,i) * (x_i + center)^2 <= remaining. The term is monotone in the
    // distance from -center, so scan outward from the nearest integer and
    // stop each direction at the first exact violation.
    Int v0 = round_nearest(-center);
    auto try_v = [&](const Int& v) -> bool {
      Rat term = Rat(v) + center;
      Rat used = q(i, i) * term * term;
      if (used > remaining) return false;
      x[i] = v;
      self(self, i - 1, remaining - used);
      return true;
    };
    for (Int v = v0; try_v(v); ++v) {}
    for (Int v = v0 - 1; try_v(v); --v) {}
    x[i] = 0;
  };
  rec(rec, n - 1, Rat(1));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace symlat
