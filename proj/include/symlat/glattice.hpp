#pragma once

// G-lattices: integral Gram plus G-action, the lifted inner product, the
// conjugate lattice, the module-generator finder over (Z/m)<G>, and the
// invertibility test.

#include <map>
#include <optional>

#include "symlat/lattice.hpp"
#include "symlat/modring.hpp"
#include "symlat/numth.hpp"

namespace symlat {

class GLattice {
 public:
  const GroupContext* G = nullptr;
  MatZ gram;
  std::vector<MatZ> gen_action;   // one matrix per cyclic generator g_i
  std::vector<MatZ> elem_action;  // per-element matrices, indexed like G.elements

  int rank() const { return gram.rows(); }

  const MatZ& action_of(const GroupElement& g) const { return elem_action[G->index_of(g)]; }

  // x |-> a*x for a ring element given by S-coefficients.
  std::vector<Int> act(const RingZ& a, const std::vector<Int>& x) const {
    std::vector<Int> out(rank(), Int(0));
    for (int s = 0; s < G->n; ++s) {
      if (a.c[s] == 0) continue;
      const MatZ& M = elem_action[G->s_elem_index[s]];
      for (int i = 0; i < rank(); ++i) {
        Int row(0);
        for (int j = 0; j < rank(); ++j) row += M(i, j) * x[j];
        out[i] += a.c[s] * row;
      }
    }
    return out;
  }

  Int inner(const std::vector<Int>& x, const std::vector<Int>& y) const {
    Int s(0);
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j) s += x[i] * gram(i, j) * y[j];
    return s;
  }
};

namespace detail {

inline std::vector<MatZ> derive_elem_actions(const GroupContext& G, int rank,
                                             const std::vector<MatZ>& gen_action) {
  // M_g for every g by multiplying generator powers; eager so reads are
  // trivially thread-safe.
  std::vector<MatZ> elems(G.order());
  for (const auto& g : G.elements) {
    MatZ M = MatZ::identity(rank);
    for (size_t i = 0; i < G.orders.size(); ++i)
      for (int64_t e = 0; e < g.exps[i]; ++e) M = M * gen_action[i];
    elems[G.index_of(g)] = M;
  }
  return elems;
}

}  // namespace detail

// Build without validation (tests and the instance generator need this for
// deliberately malformed actions).
inline GLattice make_glattice_unchecked(const GroupContext& G, MatZ gram,
                                        std::vector<MatZ> gen_action) {
  GLattice L;
  L.G = &G;
  L.gram = std::move(gram);
  L.gen_action = std::move(gen_action);
  L.elem_action = detail::derive_elem_actions(G, L.gram.rows(), L.gen_action);
  return L;
}

inline GLattice make_glattice(const GroupContext& G, MatZ gram, std::vector<MatZ> gen_action) {
  if (gen_action.size() != G.orders.size()) throw BadInput("one action matrix per generator");
  GLattice L = make_glattice_unchecked(G, std::move(gram), std::move(gen_action));
  int n = L.rank();
  if (L.gram != transpose(L.gram)) throw BadInput("gram not symmetric");
  for (size_t i = 0; i < G.orders.size(); ++i) {
    const MatZ& M = L.gen_action[i];
    if (transpose(M) * L.gram * M != L.gram) throw BadInput("action does not preserve the form");
    // Group relations and commutativity.
    MatZ P = MatZ::identity(n);
    for (int64_t e = 0; e < G.orders[i]; ++e) P = P * M;
    if (P != MatZ::identity(n)) throw BadInput("generator order relation violated");
    for (size_t j = 0; j < i; ++j)
      if (M * L.gen_action[j] != L.gen_action[j] * M) throw BadInput("generators do not commute");
  }
  if (L.action_of(G.u) != -MatZ::identity(n)) throw BadInput("u must act as -1");
  return L;
}

inline GLattice standard_lattice(const GroupContext& G) {
  int n = static_cast<int>(G.n);
  std::vector<MatZ> gens;
  for (size_t i = 0; i < G.orders.size(); ++i) {
    GroupElement g = G.identity();
    g.exps[i] = 1 % G.orders[i];
    MatZ M(n, n);
    for (int j = 0; j < n; ++j) {
      int pos, sign;
      G.decompose(G.mul(g, G.S[j]), pos, sign);
      M(pos, j) = sign;
    }
    gens.push_back(M);
  }
  return make_glattice(G, MatZ::identity(n), std::move(gens));
}

inline GLattice conj_lattice(const GLattice& L) {
  std::vector<MatZ> gens;
  for (size_t i = 0; i < L.G->orders.size(); ++i) {
    GroupElement g = L.G->identity();
    g.exps[i] = 1 % L.G->orders[i];
    gens.push_back(L.action_of(L.G->inv(g)));
  }
  return make_glattice_unchecked(*L.G, L.gram, std::move(gens));
}

// x . conj(y) = sum_{sigma in S} <x, sigma y> sigma.
inline RingZ lifted_inner(const GLattice& L, const std::vector<Int>& x, const std::vector<Int>& y) {
  RingZ r = ring_zero<Int>(*L.G);
  for (int s = 0; s < L.G->n; ++s) {
    auto sy = L.elem_action[L.G->s_elem_index[s]] * y;
    r.c[s] = L.inner(x, sy);
  }
  return r;
}

// ---- module generator finder over (Z/m)<G> ----

namespace detail {

// Multiplication matrices of the ring generators acting on M = L/pL are just
// the action matrices; a ring element a acts as sum a_sigma M_sigma.

struct ModPModule {
  const GLattice* L;
  Int p;
  int dim;  // = rank of L

  std::vector<Int> act(const RingZ& a, const std::vector<Int>& x) const {
    auto y = L->act(a, x);
    for (auto& v : y) v = mod_reduce(v, p);
    return y;
  }

  // F_p-span of { sigma y : sigma in S } (u contributes only signs).
  int orbit_rank(const std::vector<Int>& y) const {
    std::vector<std::vector<Int>> vecs;
    for (int s = 0; s < L->G->n; ++s) {
      auto v = L->elem_action[L->G->s_elem_index[s]] * y;
      for (auto& t : v) t = mod_reduce(t, p);
      vecs.push_back(std::move(v));
    }
    return span_rank_mod_p(vecs, p);
  }
};

// Ring-side data for (Z/p)<G>: coefficients vectors of length n over F_p.
struct ModPRing {
  const GroupContext* G;
  Int p;

  RingZ from_vec(const std::vector<Int>& v) const { return RingZ{G, v}; }

  std::vector<Int> reduce(const RingZ& a) const {
    std::vector<Int> v(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) v[i] = mod_reduce(a.c[i], p);
    return v;
  }

  std::vector<Int> mul(const std::vector<Int>& a, const std::vector<Int>& b) const {
    return reduce(ring_mul(RingZ{G, a}, RingZ{G, b}));
  }

  // Matrix of the Frobenius x -> x^p (additive and F_p-linear).
  MatZ frobenius_matrix() const {
    int n = static_cast<int>(G->n);
    MatZ F(n, n);
    for (int j = 0; j < n; ++j) {
      // sigma_j^p with sign handling via group power.
      RingZ e = ring_of_group<Int>(*G, G->S[j]);
      RingZ fp = e;
      // p may exceed 64 bits in principle; powering by repeated squaring on
      // the exponent as mpz.
      RingZ r = ring_one<Int>(*G);
      RingZ base = e;
      Int ee = p;
      while (ee > 0) {
        if (mpz_odd_p(ee.get_mpz_t())) r = ring_mul(r, base);
        ee >>= 1;
        if (ee > 0) base = ring_mul(base, base);
      }
      fp = r;
      auto col = reduce(fp);
      for (int i = 0; i < n; ++i) F(i, j) = col[i];
    }
    return F;
  }
};

// Primitive idempotents of (Z/p)<G>: nilradical via iterated Frobenius kernel,
// field splitting of the semisimple quotient via eigenspaces of multiplication
// by Frobenius-fixed elements, then Hensel lifting e -> 3e^2 - 2e^3.
inline std::vector<std::vector<Int>> primitive_idempotents(const ModPRing& R) {
  int n = static_cast<int>(R.G->n);
  MatZ F = R.frobenius_matrix();
  // Nilradical = ker(F^N) with p^N >= n.
  MatZ FN = F;
  Int pw = R.p;
  while (pw < n) { FN = FN * F; pw *= R.p; }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) FN(i, j) = mod_reduce(FN(i, j), R.p);
  auto nil = kernel_mod_p(FN, R.p);

  // Components represented by idempotents of R mod nil; we work with honest
  // ring elements and treat "equal mod nil" via rank computations.
  // Split using b in the Frobenius-fixed subalgebra: ker(F - I) contains the
  // nil-free fixed points plus possibly nil contributions; splitting by
  // eigenvalues of mult_b still separates components.
  MatZ FI = F;
  for (int i = 0; i < n; ++i) FI(i, i) = mod_reduce(FI(i, i) - 1, R.p);
  auto fixed = kernel_mod_p(FI, R.p);

  std::vector<Int> one(n, Int(0));
  one[0] = 1;
  std::vector<std::vector<Int>> comps = {one};  // idempotents (exact in R)

  // Lift an idempotent-mod-nil to an exact idempotent.
  auto hensel = [&](std::vector<Int> e) {
    for (int it = 0; it < 64; ++it) {
      auto e2 = R.mul(e, e);
      if (e2 == e) return e;
      // e <- 3e^2 - 2e^3
      auto e3 = R.mul(e2, e);
      std::vector<Int> ne(n);
      for (int i = 0; i < n; ++i) ne[i] = mod_reduce(3 * e2[i] - 2 * e3[i], R.p);
      e = std::move(ne);
    }
    throw InternalCheckFailed("idempotent lifting did not converge");
  };

  // Does mult-by-b have a single eigenvalue on the component of f? We split
  // the component f by each fixed-subalgebra basis vector until no candidate
  // splits anything further.
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& braw : fixed) {
      std::vector<std::vector<Int>> next;
      for (const auto& f : comps) {
        auto b = R.mul(f, braw);
        // Eigenvalues of mult_b on fR: roots of the minimal polynomial of b
        // in the component; b is Frobenius-fixed mod nil so the minimal
        // polynomial splits over F_p. Scan lambda via f*(b - lambda) being
        // non-invertible on the component: collect eigen-idempotents by
        // Lagrange interpolation over the distinct eigenvalues.
        // Compute eigenvalues: lambda with rank drop of mult_{b - lambda f}
        // restricted to the ideal fR.
        // Basis of fR:
        std::vector<std::vector<Int>> comp_basis;
        for (int j = 0; j < n; ++j) {
          RingZ e = ring_of_group<Int>(*R.G, R.G->S[j]);
          comp_basis.push_back(R.mul(f, R.reduce(e)));
        }
        int comp_dim = span_rank_mod_p(comp_basis, R.p);
        std::vector<Int> eigs;
        for (Int lam = 0; lam < R.p; ++lam) {
          // mult by (b - lam*f) on fR: vectors (b - lam f) * basis_j.
          std::vector<Int> shift(n);
          for (int i = 0; i < n; ++i) shift[i] = mod_reduce(b[i] - lam * f[i], R.p);
          std::vector<std::vector<Int>> img;
          for (const auto& v : comp_basis) img.push_back(R.mul(shift, v));
          if (span_rank_mod_p(img, R.p) < comp_dim) eigs.push_back(lam);
        }
        if (eigs.size() <= 1) {
          next.push_back(f);
          continue;
        }
        progress = true;
        // Lagrange projectors: f_lam = prod_{mu != lam} (b - mu f) / (lam - mu),
        // idempotent mod nil; lift exactly.
        for (const auto& lam : eigs) {
          std::vector<Int> proj = f;
          for (const auto& mu : eigs) {
            if (mu == lam) continue;
            std::vector<Int> shift(n);
            for (int i = 0; i < n; ++i) shift[i] = mod_reduce(b[i] - mu * f[i], R.p);
            proj = R.mul(proj, shift);
            Int inv = mod_inverse(mod_reduce(lam - mu, R.p), R.p);
            for (auto& t : proj) t = mod_reduce(t * inv, R.p);
          }
          next.push_back(hensel(proj));
        }
      }
      comps = std::move(next);
    }
  }

  // Orthogonalize the lifted idempotents: e_i <- e_i * prod_{j<i} (1 - e_j).
  std::vector<std::vector<Int>> out;
  for (auto e : comps) {
    for (const auto& prev : out) {
      std::vector<Int> onemp(n);
      for (int i = 0; i < n; ++i) onemp[i] = mod_reduce((i == 0 ? 1 : 0) - prev[i], R.p);
      e = R.mul(e, onemp);
    }
    out.push_back(e);
  }
  return out;
}

// Generator of L/pL over (Z/p)<G> via ring decomposition; valid for any p.
inline std::optional<std::vector<Int>> generator_mod_p_decomp(const GLattice& L, const Int& p) {
  const GroupContext& G = *L.G;
  int n = L.rank();
  ModPRing R{&G, p};
  ModPModule M{&L, p, n};

  auto idems = primitive_idempotents(R);

  // Nilradical basis (recomputed; cheap).
  MatZ F = R.frobenius_matrix();
  MatZ FN = F;
  Int pw = p;
  while (pw < G.n) { FN = FN * F; pw *= p; }
  for (int i = 0; i < G.n; ++i)
    for (int j = 0; j < G.n; ++j) FN(i, j) = mod_reduce(FN(i, j), p);
  auto nil = kernel_mod_p(FN, p);

  std::vector<Int> y(n, Int(0));
  for (const auto& e : idems) {
    // Component data: dim e*R, dim e*nil, residue field dimension.
    std::vector<std::vector<Int>> eR;
    for (int j = 0; j < G.n; ++j)
      eR.push_back(R.mul(e, R.reduce(ring_of_group<Int>(G, G.S[j]))));
    int dim_eR = span_rank_mod_p(eR, p);
    std::vector<std::vector<Int>> enil;
    for (const auto& v : nil) enil.push_back(R.mul(e, v));
    int dim_enil = enil.empty() ? 0 : span_rank_mod_p(enil, p);
    int dim_K = dim_eR - dim_enil;

    // e*M and m_i*M = e*nil*M as F_p-subspaces of M.
    std::vector<std::vector<Int>> eM;
    for (int j = 0; j < n; ++j) {
      std::vector<Int> basis_vec(n, Int(0));
      basis_vec[j] = 1;
      eM.push_back(M.act(R.from_vec(e), basis_vec));
    }
    int dim_eM = span_rank_mod_p(eM, p);
    std::vector<std::vector<Int>> mM;  // e * nil * M
    for (const auto& v : nil)
      for (int j = 0; j < n; ++j) {
        std::vector<Int> basis_vec(n, Int(0));
        basis_vec[j] = 1;
        mM.push_back(M.act(R.from_vec(R.mul(e, v)), basis_vec));
      }
    int dim_mM = mM.empty() ? 0 : span_rank_mod_p(mM, p);

    // Cyclic on this component iff dim_K(M_e / m M_e) <= 1, i.e. the F_p
    // codimension is 0 (component dies) or exactly dim_K.
    int d = dim_eM - dim_mM;
    if (d != 0 && d != dim_K) return std::nullopt;
    if (d == 0) continue;

    // Pick a component generator: an element of eM outside m*M (mod the
    // maximal ideal it is a nonzero K-scalar, hence a generator by Nakayama).
    bool found = false;
    for (const auto& cand : eM) {
      auto test = mM;
      test.push_back(cand);
      if (span_rank_mod_p(test, p) > dim_mM) {
        for (int i = 0; i < n; ++i) y[i] = mod_reduce(y[i] + cand[i], p);
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }

  if (M.orbit_rank(y) != n) return std::nullopt;
  return y;
}

// Deterministic rank-climbing generator search, valid when p > n + 1
// (avoids the Theta(p) eigenvalue scans of the decomposition route).
inline std::optional<std::vector<Int>> generator_mod_p_climb(const GLattice& L, const Int& p) {
  int n = L.rank();
  ModPModule M{&L, p, n};
  std::vector<Int> y(n, Int(0));
  int score = 0;
  while (score < n) {
    int best_gain = 0;
    std::vector<Int> best;
    for (int j = 0; j < n && best_gain == 0; ++j) {
      for (int cc = 0; cc <= n + 1 && best_gain == 0; ++cc) {
        std::vector<Int> cand = y;
        cand[j] = mod_reduce(cand[j] + cc, p);
        if (cand == y) continue;
        int r = M.orbit_rank(cand);
        if (r > score) {
          best_gain = r - score;
          best = std::move(cand);
        }
      }
    }
    if (best_gain == 0) return std::nullopt;  // no generator exists
    y = std::move(best);
    score += best_gain;
  }
  return y;
}

}  // namespace detail

// Returns e_m with {sigma e_m} generating L/mL, or nullopt.
inline std::optional<std::vector<Int>> find_module_generator(const GLattice& L, const Int& m,
                                                             const Int& trial_bound = Int(1000000)) {
  if (m < 2) throw BadInput("m must be >= 2");
  int n = L.rank();
  auto factors = factorize(m, trial_bound);

  Int mod_so_far = 1;
  std::vector<Int> y;
  for (const auto& [p, e] : factors) {
    std::optional<std::vector<Int>> yp;
    if (p <= L.G->n + 1)
      yp = detail::generator_mod_p_decomp(L, p);
    else
      yp = detail::generator_mod_p_climb(L, p);
    if (!yp) return std::nullopt;
    // A mod-p generator is a mod-p^e generator (Nakayama).
    Int pe = 1;
    for (Int i = 0; i < e; ++i) pe *= p;
    if (mod_so_far == 1) {
      y = *yp;
      mod_so_far = pe;
    } else {
      for (int i = 0; i < n; ++i) y[i] = crt(y[i], mod_so_far, (*yp)[i], pe);
      mod_so_far *= pe;
    }
  }
  for (auto& v : y) v = mod_reduce(v, m);

  // Verification: the #G vectors {coords of sigma e_m} together with mI span
  // (Z/m)^n, i.e. the stacked HNF has unit diagonal.
  MatZ stack(static_cast<int>(L.G->order()) + n, n);
  int r = 0;
  for (const auto& g : L.G->elements) {
    auto v = L.action_of(g) * y;
    for (int j = 0; j < n; ++j) stack(r, j) = v[j];
    ++r;
  }
  for (int i = 0; i < n; ++i) stack(r + i, i) = m;
  MatZ H = hnf(stack);
  bool ok = (H.rows() == n);
  if (ok) {
    Int prod = 1;
    for (int i = 0; i < n; ++i) prod *= H(i, i);
    ok = (prod == 1);
  }
  if (!ok) throw InternalCheckFailed("claimed generator does not span L/mL");
  return y;
}

struct InvertResult {
  bool ok = false;
  int failed_step = 0;  // 1..5 per the algorithm, 0 on success
  std::vector<Int> e2;
  Int q;
};

// Steps: (i) rank = n, (ii) det = 1, (iii) e_2 exists, (iv) q = index of
// Z<G>e_2 in L, (v) e_q exists.
inline InvertResult is_invertible(const GLattice& L, const Int& trial_bound = Int(1000000)) {
  InvertResult res;
  const GroupContext& G = *L.G;
  if (L.rank() != G.n) {
    res.failed_step = 1;
    return res;
  }
  if (determinant_z(L.gram) != 1) {
    res.failed_step = 2;
    return res;
  }
  auto e2 = find_module_generator(L, 2, trial_bound);
  if (!e2) {
    res.failed_step = 3;
    return res;
  }
  res.e2 = *e2;
  // q = |det of the coordinate matrix of {sigma e_2}_{sigma in S}|.
  MatZ C(L.rank(), L.rank());
  for (int s = 0; s < G.n; ++s) {
    auto v = L.elem_action[G.s_elem_index[s]] * res.e2;
    for (int i = 0; i < L.rank(); ++i) C(i, s) = v[i];
  }
  Int q = determinant_z(C);
  if (q < 0) q = -q;
  if (q == 0) {
    res.failed_step = 4;
    return res;
  }
  res.q = q;
  if (q > 1) {
    auto eq = find_module_generator(L, q, trial_bound);
    if (!eq) {
      res.failed_step = 5;
      return res;
    }
  }
  res.ok = true;
  return res;
}

}  // namespace symlat
