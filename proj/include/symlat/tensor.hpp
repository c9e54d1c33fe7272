#pragma once

// Tensor products of invertible G-lattices through ideal realizations, with
// LLL reduction after every multiplication, and transport of mod-m cosets
// through tensor powers.

#include <optional>

#include "symlat/ideals.hpp"

namespace symlat {

// The bilinear map L x M -> L (x) M realized as "solve representatives in
// Q<G>, multiply, express on the reduced product basis".
struct MulMap {
  Realization left, right;
  IdealRealization prod;  // basis already LLL-transported

  std::vector<Int> apply(const std::vector<Int>& x, const std::vector<Int>& y) const {
    // Representative of x in I_L: coefficient vector T_L^{-1} x.
    auto lift = [](const Realization& R, const std::vector<Int>& v) {
      std::vector<Rat> b(v.size());
      for (size_t i = 0; i < v.size(); ++i) b[i] = Rat(v[i]);
      auto x = solve_q(to_rational(R.basis_map), b);
      if (!x) throw InternalCheckFailed("singular realization in MulMap");
      RingQ r{R.ideal.G, *x};
      return r;
    };
    RingQ xi = lift(left, x), eta = lift(right, y);
    RingQ zeta = ring_mul(xi, eta);
    auto coords = prod.coords_of(zeta);
    std::vector<Int> out(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) {
      if (!is_integral(coords[i])) throw InternalCheckFailed("tensor image is not integral");
      out[i] = coords[i].get_num();
    }
    return out;
  }
};

struct TensorProduct {
  GLattice lattice;
  MulMap map;
};

// L (x) M = L_(IJ, wv): realize both through their e2's, multiply ideals,
// LLL-reduce, rebuild Gram and action.
inline TensorProduct glattice_mul(const GLattice& L, const GLattice& M) {
  auto e2L = find_module_generator(L, 2);
  auto e2M = find_module_generator(M, 2);
  if (!e2L || !e2M) throw NotInvertible("factor has no generator mod 2");
  Realization RL = realize(L, *e2L);
  Realization RM = realize(M, *e2M);
  IdealRealization prod = reduce_ideal(ideal_mul(RL.ideal, RM.ideal));
  TensorProduct out{as_glattice(prod), MulMap{std::move(RL), std::move(RM), std::move(prod)}};
  return out;
}

// Transport cosets d in L/mL, d' in M/mM to d (x) d' in the product.
inline std::pair<TensorProduct, std::vector<Int>> coset_tensor(const GLattice& L, const GLattice& M,
                                                               const Int& m,
                                                               const std::vector<Int>& d,
                                                               const std::vector<Int>& dp) {
  TensorProduct T = glattice_mul(L, M);
  auto v = T.map.apply(d, dp);
  for (auto& x : v) x = mod_reduce(x, m);
  return {std::move(T), std::move(v)};
}

struct PowerTelemetry {
  long mul_steps = 0;
  Int max_gram_entry = 0;
};

struct PowerHandle {
  GLattice lattice;            // L^(x) r, reduced basis
  std::optional<std::vector<Int>> coset;  // d^(x) r mod m, on lattice's basis
  Int modulus;
  Int r;
  PowerTelemetry telemetry;
};

// Binary square-and-multiply for (L^(x) r, d^(x) r mod m).
inline PowerHandle power_with_coset(const GLattice& L, const Int& m, const std::vector<Int>& d,
                                    const Int& r) {
  if (r < 1) throw BadInput("exponent must be >= 1");
  PowerHandle H;
  H.modulus = m;
  H.r = r;
  H.lattice = L;
  H.coset = d;

  auto record = [&](const GLattice& P) {
    for (int i = 0; i < P.gram.rows(); ++i)
      for (int j = 0; j < P.gram.cols(); ++j) {
        Int a = abs(P.gram(i, j));
        if (a > H.telemetry.max_gram_entry) H.telemetry.max_gram_entry = a;
      }
  };
  record(L);

  size_t bits = mpz_sizeinbase(r.get_mpz_t(), 2);
  for (size_t i = bits - 1; i-- > 0;) {
    {
      auto [T, c] = coset_tensor(H.lattice, H.lattice, m, *H.coset, *H.coset);
      H.lattice = std::move(T.lattice);
      H.coset = std::move(c);
      ++H.telemetry.mul_steps;
      record(H.lattice);
    }
    if (mpz_tstbit(r.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      auto [T, c] = coset_tensor(H.lattice, L, m, *H.coset, d);
      H.lattice = std::move(T.lattice);
      H.coset = std::move(c);
      ++H.telemetry.mul_steps;
      record(H.lattice);
    }
  }
  return H;
}

// Lattice-only power (Witt-Picard exponentiation).
inline GLattice glattice_pow(const GLattice& L, const Int& r) {
  if (r < 1) throw BadInput("exponent must be >= 1");
  GLattice P = L;
  size_t bits = mpz_sizeinbase(r.get_mpz_t(), 2);
  for (size_t i = bits - 1; i-- > 0;) {
    P = glattice_mul(P, P).lattice;
    if (mpz_tstbit(r.get_mpz_t(), static_cast<mp_bitcnt_t>(i)))
      P = glattice_mul(P, L).lattice;
  }
  return P;
}

inline GLattice wpic_identity(const GroupContext& G) { return standard_lattice(G); }
inline GLattice wpic_inverse(const GLattice& L) { return conj_lattice(L); }
inline GLattice wpic_mul(const GLattice& L, const GLattice& M) { return glattice_mul(L, M).lattice; }
inline GLattice wpic_pow(const GLattice& L, const Int& r) { return glattice_pow(L, r); }
// wpic_equal lives with the engine (it needs the isomorphism decision).

// Direct tensor construction (test oracle, n <= 4): present L (x)_{Z<G>} M by
// generators e_i (x) f_j and relations sigma x (x) y - x (x) sigma y.
struct DirectTensor {
  GLattice lattice;
  MatZ elem_coords;  // row (i*n+j) = coordinates of e_i (x) f_j
};

inline DirectTensor direct_tensor(const GLattice& L, const GLattice& M) {
  const GroupContext& G = *L.G;
  int n = L.rank();
  int N = n * n;
  // Relations for each group generator.
  std::vector<std::vector<Int>> rel;
  for (size_t gi = 0; gi < G.orders.size(); ++gi) {
    GroupElement g = G.identity();
    g.exps[gi] = 1 % G.orders[gi];
    const MatZ& AL = L.action_of(g);
    const MatZ& AM = M.action_of(g);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<Int> row(N, Int(0));
        // (g e_i) (x) f_j - e_i (x) (g f_j)
        for (int l = 0; l < n; ++l) row[l * n + j] += AL(l, i);
        for (int l = 0; l < n; ++l) row[i * n + l] -= AM(l, j);
        rel.push_back(std::move(row));
      }
  }
  MatZ R(static_cast<int>(rel.size()), N);
  for (size_t i = 0; i < rel.size(); ++i)
    for (int j = 0; j < N; ++j) R(static_cast<int>(i), j) = rel[i][j];
  MatZ V;
  auto d = snf(R, &V);
  // Quotient Z^N / rowspan(R) = prod Z/d_i via x -> x V; free coordinates are
  // those with d_i = 0. Expect exactly n free coordinates, no torsion.
  std::vector<int> free_pos;
  for (int j = 0; j < N; ++j) {
    if (d[j] == 0)
      free_pos.push_back(j);
    else if (d[j] != 1)
      throw InternalCheckFailed("direct tensor has torsion");
  }
  if (static_cast<int>(free_pos.size()) != n)
    throw InternalCheckFailed("direct tensor has wrong rank");
  // Coordinates of each elementary tensor: row i of V restricted to free cols.
  MatZ coords(N, n);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < n; ++j) coords(i, j) = V(i, free_pos[j]);
  // Lifts of the quotient basis: rows of V^{-1} at the free positions.
  auto Vinv_q = inverse_q(to_rational(V));
  if (!Vinv_q) throw InternalCheckFailed("SNF transform not invertible");
  MatZ lifts(n, N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < N; ++j) lifts(i, j) = (*Vinv_q)(free_pos[i], j).get_num();
  // Descended inner product: <e_i (x) f_j, e_k (x) f_l> = t((e_i . conj(e_k))_L
  // * (f_j . conj(f_l))_M).
  auto pair_elem = [&](int a, int b) {
    int i = a / n, j = a % n, k = b / n, l = b % n;
    auto ei = std::vector<Int>(n, Int(0)), ek = ei, fj = ei, fl = ei;
    ei[i] = 1; ek[k] = 1; fj[j] = 1; fl[l] = 1;
    RingZ left = lifted_inner(L, ei, ek);
    RingZ right = lifted_inner(M, fj, fl);
    return trace(ring_mul(left, right));
  };
  MatZ gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      Int s(0);
      for (int a = 0; a < N; ++a) {
        if (lifts(i, a) == 0) continue;
        for (int b = 0; b < N; ++b) {
          if (lifts(j, b) == 0) continue;
          s += lifts(i, a) * lifts(j, b) * pair_elem(a, b);
        }
      }
      gram(i, j) = s;
      gram(j, i) = s;
    }
  // Action of generators on the quotient basis.
  std::vector<MatZ> gens;
  for (size_t gi = 0; gi < G.orders.size(); ++gi) {
    GroupElement g = G.identity();
    g.exps[gi] = 1 % G.orders[gi];
    const MatZ& AL = L.action_of(g);
    MatZ A(n, n);
    for (int c = 0; c < n; ++c) {
      // g * (lift of basis c): act on the left factor of each elementary term.
      std::vector<Int> img(N, Int(0));
      for (int a = 0; a < N; ++a) {
        if (lifts(c, a) == 0) continue;
        int i = a / n, j = a % n;
        for (int l = 0; l < n; ++l) img[l * n + j] += lifts(c, a) * AL(l, i);
      }
      // Quotient coordinates of img.
      for (int l = 0; l < n; ++l) {
        Int s(0);
        for (int a = 0; a < N; ++a) s += img[a] * coords(a, l);
        A(l, c) = s;
      }
    }
    gens.push_back(std::move(A));
  }
  DirectTensor out{make_glattice(G, std::move(gram), std::move(gens)), std::move(coords)};
  return out;
}

}  // namespace symlat
