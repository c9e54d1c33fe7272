#pragma once

// Fractional-ideal realizations of invertible G-lattices: I = {x : x e2 in L},
// w = (e2 . conj(e2))^{-1}, products and powers through Hermite normal forms,
// and the Gram form t(x conj(y) / w).

#include <optional>

#include "symlat/glattice.hpp"

namespace symlat {

struct IdealRealization {
  const GroupContext* G = nullptr;
  MatQ basis;  // rows = Z-basis of I on the S-basis of Q<G>
  RingQ w;
  Int den;     // common denominator of basis entries

  RingQ row_elt(int i) const {
    RingQ r = ring_zero<Rat>(*G);
    for (int j = 0; j < basis.cols(); ++j) r.c[j] = basis(i, j);
    return r;
  }

  // Ring element from integer coordinates on this basis.
  RingQ elt_of_coords(const std::vector<Int>& x) const {
    RingQ r = ring_zero<Rat>(*G);
    for (int i = 0; i < basis.rows(); ++i)
      for (int j = 0; j < basis.cols(); ++j) r.c[j] += Rat(x[i]) * basis(i, j);
    return r;
  }

  // Exact coordinates of a ring element with respect to this basis.
  std::vector<Rat> coords_of(const RingQ& x) const {
    auto inv = inverse_q(transpose(basis));
    if (!inv) throw InternalCheckFailed("ideal basis is singular");
    std::vector<Rat> v(x.c.begin(), x.c.end());
    return *inv * v;
  }
};

namespace detail {

inline Int lcm_denominator(const MatQ& b) {
  Int den = 1;
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) den = lcm(den, Int(b(i, j).get_den()));
  return den;
}

}  // namespace detail

inline IdealRealization make_ideal(const GroupContext& G, MatQ basis, RingQ w) {
  IdealRealization I;
  I.G = &G;
  I.basis = std::move(basis);
  I.w = std::move(w);
  I.den = detail::lcm_denominator(I.basis);
  return I;
}

inline IdealRealization unit_ideal(const GroupContext& G) {
  return make_ideal(G, MatQ::identity(static_cast<int>(G.n)), ring_one<Rat>(G));
}

// Canonical basis for row-span equality tests: HNF of the scaled integer
// matrix, paired with the denominator in lowest terms.
inline std::pair<MatZ, Int> canonical_basis(const IdealRealization& A) {
  int n = A.basis.rows();
  MatZ Z(n, A.basis.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < A.basis.cols(); ++j) {
      Rat scaled = A.basis(i, j) * Rat(A.den);
      Z(i, j) = scaled.get_num();
    }
  MatZ H = hnf(Z);
  // Reduce the pair (H, den) by the content gcd.
  Int g = A.den;
  for (int i = 0; i < H.rows() && g > 1; ++i)
    for (int j = 0; j < H.cols() && g > 1; ++j) g = gcd(g, H(i, j));
  if (g > 1) {
    for (int i = 0; i < H.rows(); ++i)
      for (int j = 0; j < H.cols(); ++j) H(i, j) /= g;
    return {H, A.den / g};
  }
  return {H, A.den};
}

inline bool ideal_equal(const IdealRealization& A, const IdealRealization& B) {
  return canonical_basis(A) == canonical_basis(B);
}

struct Realization {
  IdealRealization ideal;
  MatZ basis_map;  // T: columns = coordinates of sigma e2, sigma in S
};

// Realize invertible L as L_(I,w) using gamma = e2.
inline Realization realize(const GLattice& L, const std::vector<Int>& e2) {
  const GroupContext& G = *L.G;
  int n = L.rank();
  MatZ T(n, n);
  for (int s = 0; s < G.n; ++s) {
    auto v = L.elem_action[G.s_elem_index[s]] * e2;
    for (int i = 0; i < n; ++i) T(i, s) = v[i];
  }
  auto Tinv = inverse_q(to_rational(T));
  if (!Tinv) throw NotInvertible("sigma e2 do not span; realization is singular");
  // x_i solves x_i * e2 = b_i; coefficient vector of x_i = column i of T^{-1},
  // so the basis rows form (T^{-1})^T.
  MatQ basis = transpose(*Tinv);
  RingQ w = ring_inverse(to_rational(lifted_inner(L, e2, e2)));
  Realization R{make_ideal(G, std::move(basis), std::move(w)), T};
  return R;
}

inline MatZ gram_of(const IdealRealization& A);

// realize + exact Gram agreement check (the realization is a G-isometry).
inline Realization realize_checked(const GLattice& L, const std::vector<Int>& e2) {
  Realization R = realize(L, e2);
  if (gram_of(R.ideal) != L.gram)
    throw InternalCheckFailed("realization Gram does not match the lattice");
  return R;
}

// Gram of L_(I,w) on the stored basis; must be integral and positive definite.
inline MatZ gram_of(const IdealRealization& A) {
  int n = A.basis.rows();
  RingQ winv = ring_inverse(A.w);
  MatZ g(n, n);
  std::vector<RingQ> rows_conj;
  for (int i = 0; i < n; ++i) rows_conj.push_back(conj(A.row_elt(i)));
  for (int i = 0; i < n; ++i) {
    RingQ xi = A.row_elt(i);
    for (int j = 0; j <= i; ++j) {
      Rat v = trace(ring_mul(ring_mul(xi, rows_conj[j]), winv));
      if (!is_integral(v)) throw NotIntegral();
      g(i, j) = v.get_num();
      g(j, i) = g(i, j);
    }
  }
  // Positive definiteness via leading principal minors.
  for (int t = 1; t <= n; ++t) {
    MatZ minor(t, t);
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) minor(i, j) = g(i, j);
    if (determinant_z(minor) <= 0) throw NotPositive();
  }
  return g;
}

// Multiplication-by-group-generator matrices on the ideal basis.
inline GLattice as_glattice(const IdealRealization& A) {
  const GroupContext& G = *A.G;
  int n = A.basis.rows();
  MatZ gram = gram_of(A);
  auto basisT_inv = inverse_q(transpose(A.basis));
  if (!basisT_inv) throw InternalCheckFailed("ideal basis is singular");
  std::vector<MatZ> gens;
  for (size_t gi = 0; gi < G.orders.size(); ++gi) {
    GroupElement g = G.identity();
    g.exps[gi] = 1 % G.orders[gi];
    RingQ gq = to_rational(ring_of_group<Int>(G, g));
    MatQ Mq(n, n);
    for (int i = 0; i < n; ++i) {
      auto prod = ring_mul(gq, A.row_elt(i));
      std::vector<Rat> v(prod.c.begin(), prod.c.end());
      auto coords = *basisT_inv * v;
      for (int l = 0; l < n; ++l) Mq(l, i) = coords[l];
    }
    MatZ M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!is_integral(Mq(i, j))) throw NotIntegral("group action does not preserve the ideal");
        M(i, j) = Mq(i, j).get_num();
      }
    gens.push_back(std::move(M));
  }
  return make_glattice(G, std::move(gram), std::move(gens));
}

inline IdealRealization ideal_mul(const IdealRealization& A, const IdealRealization& B) {
  if (A.G != B.G) throw KindMismatch("ideals over different groups");
  const GroupContext& G = *A.G;
  int n = A.basis.rows();
  Int den = A.den * B.den;
  MatZ prods(n * n, n);
  for (int i = 0; i < n; ++i) {
    RingQ a = A.row_elt(i);
    for (int j = 0; j < n; ++j) {
      RingQ pr = ring_mul(a, B.row_elt(j));
      for (int l = 0; l < n; ++l) {
        Rat scaled = pr.c[l] * Rat(den);
        prods(i * n + j, l) = scaled.get_num();
      }
    }
  }
  MatZ H = hnf(prods);
  if (H.rows() != n) throw InternalCheckFailed("ideal product is not full rank");
  MatQ basis(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) basis(i, j) = Rat(H(i, j)) / Rat(den);
  return make_ideal(G, std::move(basis), ring_mul(A.w, B.w));
}

// LLL-reduce the Gram of L_(I,w) and transport the basis rows accordingly.
inline IdealRealization reduce_ideal(const IdealRealization& A) {
  MatZ g = gram_of(A);
  auto red = lll_reduce(GramLattice{g});
  MatQ U = to_rational(red.transform);
  return make_ideal(*A.G, U * A.basis, A.w);
}

inline IdealRealization ideal_pow(const IdealRealization& A, int64_t i) {
  if (i < 1) throw BadInput("ideal_pow expects i >= 1");
  IdealRealization r = A;
  for (int64_t t = 1; t < i; ++t) r = reduce_ideal(ideal_mul(r, A));
  return r;
}

// Two-generator oracle from the invertibility proof: I^i = Z<G> + Z<G> beta^i
// with beta = e_q / e2 (only meaningful when q > 1).
inline IdealRealization ideal_pow_two_gen(const GroupContext& G, const RingQ& beta, int64_t i) {
  int n = static_cast<int>(G.n);
  RingQ bi = ring_one<Rat>(G);
  for (int64_t t = 0; t < i; ++t) bi = ring_mul(bi, beta);
  Int den = 1;
  for (const auto& c : bi.c) den = lcm(den, Int(c.get_den()));
  MatZ rows(2 * n, n);
  for (int s = 0; s < n; ++s) {
    RingZ sig = ring_of_group<Int>(G, G.S[s]);
    for (int l = 0; l < n; ++l) rows(s, l) = sig.c[l] * den;
    RingQ sb = ring_mul(to_rational(sig), bi);
    for (int l = 0; l < n; ++l) rows(n + s, l) = Rat(sb.c[l] * Rat(den)).get_num();
  }
  MatZ H = hnf(rows);
  if (H.rows() != n) throw InternalCheckFailed("two-generator ideal is not full rank");
  MatQ basis(n, n);
  for (int i2 = 0; i2 < n; ++i2)
    for (int j = 0; j < n; ++j) basis(i2, j) = Rat(H(i2, j)) / Rat(den);
  return make_ideal(G, std::move(basis), ring_one<Rat>(G));  // w side tracked by caller
}

}  // namespace symlat
