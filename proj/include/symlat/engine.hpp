#pragma once

// The main decision procedures: G-isomorphism to the standard lattice,
// pairwise G-isomorphism, and the principal-ideal generator recovery
// front-end for Z[X]/(X^n - 1).

#include <optional>

#include "symlat/roots.hpp"
#include "symlat/tensor.hpp"

namespace symlat {

struct IsoCertificate {
  std::vector<Int> short_vector;  // e, coords in L
  MatZ map_matrix;                // columns = coords of sigma e, sigma in S
};

enum class NoIsoReason { NotInvertibleStep, NoNuM, NoNu, NoRoot };

inline const char* to_string(NoIsoReason r) {
  switch (r) {
    case NoIsoReason::NotInvertibleStep: return "not-invertible";
    case NoIsoReason::NoNuM: return "no-nu-m";
    case NoIsoReason::NoNu: return "no-nu";
    case NoIsoReason::NoRoot: return "no-root";
  }
  return "?";
}

struct EngineTrace {
  std::optional<AuxPrimes> aux;
  std::vector<Int> e2, e_lm;
  std::vector<Int> nu_m;   // on the power lattice basis
  std::vector<Int> s_elem; // mod ell, S-coefficients
  Int b;
  std::vector<Int> nu;     // on I^k's basis
  std::vector<Int> alpha;  // on I's basis
  long power_mul_steps = 0;
  Int q;
};

struct EngineOptions {
  bool skip_invertibility_check = false;
  Int trial_bound = Int(1000000);
};

struct IsoResult {
  std::optional<IsoCertificate> certificate;
  NoIsoReason reason = NoIsoReason::NotInvertibleStep;
  EngineTrace trace;
};

// Exact certificate validation, independent of the search path.
inline bool verify_certificate(const GLattice& L, const IsoCertificate& cert) {
  const GroupContext& G = *L.G;
  int n = L.rank();
  if (cert.map_matrix.cols() != n || cert.map_matrix.rows() != n) return false;
  // Columns must be sigma * e.
  for (int s = 0; s < G.n; ++s) {
    auto v = L.elem_action[G.s_elem_index[s]] * cert.short_vector;
    for (int i = 0; i < n; ++i)
      if (cert.map_matrix(i, s) != v[i]) return false;
  }
  // Gram pullback: P^T gram P = I.
  if (transpose(cert.map_matrix) * L.gram * cert.map_matrix != MatZ::identity(n)) return false;
  // Action commutation with the standard action.
  GLattice std_lat = standard_lattice(G);
  for (size_t i = 0; i < G.orders.size(); ++i)
    if (L.gen_action[i] * cert.map_matrix != cert.map_matrix * std_lat.gen_action[i]) return false;
  // Unimodularity of the map (bijective onto L).
  Int d = determinant_z(cert.map_matrix);
  if (d != 1 && d != -1) return false;
  return true;
}

namespace detail {

inline IsoResult isomorphism_to_standard_impl(const GLattice& L, const EngineOptions& opts) {
  const GroupContext& G = *L.G;
  int n = L.rank();
  IsoResult res;

  // (i) invertibility.
  std::vector<Int> e2;
  if (!opts.skip_invertibility_check) {
    auto inv = is_invertible(L, opts.trial_bound);
    if (!inv.ok) {
      res.reason = NoIsoReason::NotInvertibleStep;
      return res;
    }
    e2 = inv.e2;
    res.trace.q = inv.q;
  } else {
    if (L.rank() != G.n || determinant_z(L.gram) != 1) {
      res.reason = NoIsoReason::NotInvertibleStep;
      return res;
    }
    auto e2opt = find_module_generator(L, 2, opts.trial_bound);
    if (!e2opt) {
      res.reason = NoIsoReason::NotInvertibleStep;
      return res;
    }
    e2 = *e2opt;
  }
  res.trace.e2 = e2;

  // (ii) auxiliary prime powers.
  AuxPrimes aux = find_aux_primes(G.n, G.k);
  res.trace.aux = aux;
  Int ell = aux.ell, m = aux.m;

  // (iii) generator mod ell*m.
  auto e_lm_opt = find_module_generator(L, ell * m, opts.trial_bound);
  if (!e_lm_opt) {
    res.reason = NoIsoReason::NotInvertibleStep;
    return res;
  }
  std::vector<Int> e_lm = *e_lm_opt;
  res.trace.e_lm = e_lm;

  // (iv) (L^{k(m)}, e_lm^{k(m)} mod ell*m); then nu_m via the coset solver mod m.
  PowerHandle H = power_with_coset(L, ell * m, e_lm, aux.k_m);
  res.trace.power_mul_steps = H.telemetry.mul_steps;
  const GLattice& P = H.lattice;
  std::vector<Int> c = *H.coset;  // e_lm^{k(m)} mod ell*m on P's basis
  std::vector<Int> c_mod_m(n), c_mod_ell(n);
  for (int i = 0; i < n; ++i) {
    c_mod_m[i] = mod_reduce(c[i], m);
    c_mod_ell[i] = mod_reduce(c[i], ell);
  }
  auto nu_m = coset_short_vector(GramLattice{P.gram}, m, c_mod_m);
  if (!nu_m) {
    res.reason = NoIsoReason::NoNuM;
    return res;
  }
  res.trace.nu_m = *nu_m;

  // (v) solve nu_m = s * e_lm^{k(m)} mod ell for s in (Z/ell)<G>.
  MatZ A(n, n);
  for (int s = 0; s < G.n; ++s) {
    auto col = P.elem_action[G.s_elem_index[s]] * c_mod_ell;
    for (int i = 0; i < n; ++i) A(i, s) = mod_reduce(col[i], ell);
  }
  std::vector<Int> s_vec = solve_mod(A, *nu_m, ell);
  res.trace.s_elem = s_vec;
  RingM s_elem{&G, ell, s_vec};

  // (vi) b with b*k(m) = k mod k(ell); gcd(k(m), k(ell)) = k by construction.
  Int g, x, y;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), aux.k_m.get_mpz_t(),
             aux.k_ell.get_mpz_t());
  if (G.k % g != 0) throw InternalCheckFailed("gcd(k(m), k(ell)) does not divide k");
  Int mult = Int(G.k) / g;
  Int mod_b = aux.k_ell / g;
  Int b = mod_reduce(x * mult, mod_b);
  if (b == 0) b = mod_b;
  res.trace.b = b;

  // (vii) realize L and compute the ideal powers I^2..I^k.
  Realization R = realize_checked(L, e2);
  const RingQ& w = R.ideal.w;
  std::vector<IdealRealization> powers;
  powers.push_back(unit_ideal(G));
  powers.push_back(R.ideal);
  for (int64_t i = 2; i <= G.k; ++i)
    powers.push_back(reduce_ideal(ideal_mul(powers.back(), R.ideal)));

  // (viii) coset s^b (e_lm/e2)^k + ell*I^k in L_(I^k, w^k); coset solver mod ell.
  RingM s_b = pow_mod(s_elem, b);
  // xi = e_lm / e2 in I: coefficient vector solves T xi = e_lm.
  std::vector<Rat> e_lm_q(n);
  for (int i = 0; i < n; ++i) e_lm_q[i] = Rat(e_lm[i]);
  auto xi_opt = solve_q(to_rational(R.basis_map), e_lm_q);
  if (!xi_opt) throw InternalCheckFailed("realization solve failed");
  RingQ xi{&G, *xi_opt};
  RingQ xik = ring_one<Rat>(G);
  for (int64_t t = 0; t < G.k; ++t) xik = ring_mul(xik, xi);
  RingQ target = ring_mul(to_rational(ring_m_lift(s_b)), xik);
  auto tcoords = powers[static_cast<size_t>(G.k)].coords_of(target);
  std::vector<Int> tmod(n);
  for (int i = 0; i < n; ++i) {
    if (!is_integral(tcoords[i]))
      throw InternalCheckFailed("target coset is not integral on I^k");
    tmod[i] = mod_reduce(tcoords[i].get_num(), ell);
  }
  RingQ wk = ring_one<Rat>(G);
  for (int64_t t = 0; t < G.k; ++t) wk = ring_mul(wk, w);
  IdealRealization Ik = powers[static_cast<size_t>(G.k)];
  Ik.w = wk;
  MatZ gram_k = gram_of(Ik);
  auto nu = coset_short_vector(GramLattice{gram_k}, ell, tmod);
  if (!nu) {
    res.reason = NoIsoReason::NoNu;
    return res;
  }
  res.trace.nu = *nu;

  // (ix) extract the k-th root and assemble the certificate.
  GradedOrder order = make_graded_order(G, powers, w, *nu);
  RootResult root = extract_root_in(order);
  if (!root.alpha) {
    res.reason = NoIsoReason::NoRoot;
    return res;
  }
  res.trace.alpha = *root.alpha;
  // e = alpha * e2: coords = T * (alpha's ring coefficients).
  RingQ alpha_elt = R.ideal.elt_of_coords(*root.alpha);
  std::vector<Int> e(n, Int(0));
  {
    MatQ Tq = to_rational(R.basis_map);
    std::vector<Rat> ac(alpha_elt.c.begin(), alpha_elt.c.end());
    auto ecoords = Tq * ac;
    for (int i = 0; i < n; ++i) {
      if (!is_integral(ecoords[i])) throw InternalCheckFailed("e = alpha*e2 is not integral");
      e[i] = ecoords[i].get_num();
    }
  }
  IsoCertificate cert;
  cert.short_vector = e;
  cert.map_matrix = MatZ(n, n);
  for (int s = 0; s < G.n; ++s) {
    auto v = L.elem_action[G.s_elem_index[s]] * e;
    for (int i = 0; i < n; ++i) cert.map_matrix(i, s) = v[i];
  }
  if (!verify_certificate(L, cert))
    throw InternalCheckFailed("certificate failed self-verification");
  res.certificate = std::move(cert);
  return res;
}

}  // namespace detail

inline IsoResult isomorphism_to_standard(const GLattice& L, const EngineOptions& opts = {}) {
  if (!opts.skip_invertibility_check) return detail::isomorphism_to_standard_impl(L, opts);
  // Unchecked variant: internal failures indicate non-invertible input rather
  // than bugs, so fold them into NoIso. The final certificate check is the
  // correctness guarantee.
  try {
    return detail::isomorphism_to_standard_impl(L, opts);
  } catch (const InternalCheckFailed&) {
    IsoResult res;
    res.reason = NoIsoReason::NotInvertibleStep;
    return res;
  } catch (const NotAUnitError&) {
    IsoResult res;
    res.reason = NoIsoReason::NotInvertibleStep;
    return res;
  } catch (const NotIntegral&) {
    IsoResult res;
    res.reason = NoIsoReason::NotInvertibleStep;
    return res;
  } catch (const NotInvertible&) {
    IsoResult res;
    res.reason = NoIsoReason::NotInvertibleStep;
    return res;
  }
}

struct PairResult {
  std::optional<MatZ> map;  // matrix of the G-isomorphism M -> L
  NoIsoReason reason = NoIsoReason::NotInvertibleStep;
};

// Decide G-isomorphism of two invertible lattices and produce the map M -> L.
inline PairResult iso_pair(const GLattice& L, const GLattice& M,
                           const EngineOptions& opts = {}) {
  auto invL = is_invertible(L, opts.trial_bound);
  auto invM = is_invertible(M, opts.trial_bound);
  if (!invL.ok || !invM.ok) throw NotInvertible("iso_pair requires invertible inputs");

  GLattice Mbar = conj_lattice(M);
  TensorProduct K = glattice_mul(L, Mbar);
  IsoResult inner = isomorphism_to_standard(K.lattice, opts);
  PairResult res;
  if (!inner.certificate) {
    res.reason = inner.reason;
    return res;
  }
  const GroupContext& G = *L.G;
  int n = L.rank();

  // epsilon: ring element of the short vector of K = L_(I_L I_Mbar, w_L w_Mbar).
  RingQ eps = K.map.prod.elt_of_coords(inner.certificate->short_vector);
  // eta_0: ring element (w.r.t. M's own realization) of the vector of M whose
  // coordinates equal e2(Mbar); the bar map M -> Mbar is the coordinate identity.
  Realization RM = realize_checked(M, invM.e2);
  std::vector<Rat> e2mb(n);
  for (int i = 0; i < n; ++i) e2mb[i] = Rat(K.map.right.basis_map(i, 0));
  auto eta0_opt = solve_q(to_rational(RM.basis_map), e2mb);
  if (!eta0_opt) throw InternalCheckFailed("eta0 solve failed");
  RingQ eta0{&G, *eta0_opt};
  // v = eps * conj(eta0) * w_M^{-1}; the isomorphism M -> L is x = eta gamma_M
  // |-> (v eta) gamma_L.
  RingQ v = ring_mul(ring_mul(eps, conj(eta0)), ring_inverse(RM.ideal.w));
  MatQ Phi_q = to_rational(K.map.left.basis_map) * mul_matrix(v);
  {
    auto TMinv = inverse_q(to_rational(RM.basis_map));
    if (!TMinv) throw InternalCheckFailed("T_M inversion failed");
    Phi_q = Phi_q * (*TMinv);
  }
  MatZ Phi(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!is_integral(Phi_q(i, j))) throw InternalCheckFailed("pair map is not integral");
      Phi(i, j) = Phi_q(i, j).get_num();
    }
  // Verify: G-isometry M -> L.
  if (transpose(Phi) * L.gram * Phi != M.gram)
    throw InternalCheckFailed("pair map does not pull back the form");
  for (size_t i = 0; i < G.orders.size(); ++i)
    if (L.gen_action[i] * Phi != Phi * M.gen_action[i])
      throw InternalCheckFailed("pair map does not commute with the action");
  res.map = std::move(Phi);
  return res;
}

inline bool wpic_equal(const GLattice& L, const GLattice& M) {
  TensorProduct K = glattice_mul(L, conj_lattice(M));
  return isomorphism_to_standard(K.lattice).certificate.has_value();
}

// ---- generator recovery over Z[X]/(X^n - 1), n odd ----

struct GsProblem {
  int64_t n;
  MatZ ideal_basis;        // rows: Z-basis of the ideal, polynomial coefficients
  std::vector<Int> relnorm;  // coefficients of v * v(X^{-1}) mod X^n - 1
};

// The ring map iota: Z[X]/(X^n-1) -> Z<G> for G = Z/2n, X |-> g^2, as a
// signed permutation on coefficient vectors.
struct GsContext {
  GroupContext G;
  std::vector<int> pos;   // monomial i -> S position
  std::vector<int> sign;
};

inline GsContext gs_context(int64_t n) {
  if (n < 1 || n % 2 == 0) throw BadInput("n must be odd and positive");
  GroupElement u{{n}};
  GsContext C{make_group({2 * n}, u), {}, {}};
  C.pos.resize(n);
  C.sign.resize(n);
  for (int64_t i = 0; i < n; ++i) {
    GroupElement g{{(2 * i) % (2 * n)}};
    int pos, sign;
    C.G.decompose(g, pos, sign);
    C.pos[i] = pos;
    C.sign[i] = sign;
  }
  return C;
}

inline std::vector<Int> gs_map(const GsContext& C, const std::vector<Int>& poly) {
  std::vector<Int> out(C.pos.size(), Int(0));
  for (size_t i = 0; i < poly.size(); ++i) out[C.pos[i]] += C.sign[i] * poly[i];
  return out;
}

inline std::vector<Int> gs_unmap(const GsContext& C, const std::vector<Int>& ring) {
  std::vector<Int> out(C.pos.size(), Int(0));
  for (size_t i = 0; i < C.pos.size(); ++i) out[i] = C.sign[i] * ring[C.pos[i]];
  return out;
}

inline std::optional<std::vector<Int>> gs_recover(const GsProblem& prob,
                                                  const EngineOptions& opts = {}) {
  GsContext C = gs_context(prob.n);
  const GroupContext& G = C.G;
  int n = static_cast<int>(prob.n);

  RingZ wz{&G, gs_map(C, prob.relnorm)};
  RingQ w = to_rational(wz);
  if (!(conj(w) == w)) throw BadInput("relative norm must be conjugation-invariant");

  MatQ basis(n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<Int> row(n);
    for (int j = 0; j < n; ++j) row[j] = prob.ideal_basis(i, j);
    auto mapped = gs_map(C, row);
    for (int j = 0; j < n; ++j) basis(i, j) = Rat(mapped[j]);
  }
  IdealRealization I = make_ideal(G, std::move(basis), std::move(w));
  GLattice L;
  try {
    L = as_glattice(I);
  } catch (const NotIntegral&) {
    throw BadInput("ideal/relnorm pair does not define an integral form");
  } catch (const NotPositive&) {
    throw BadInput("ideal/relnorm pair does not define a positive form");
  }
  IsoResult res = isomorphism_to_standard(L, opts);
  if (!res.certificate) return std::nullopt;
  RingQ gen = I.elt_of_coords(res.certificate->short_vector);
  std::vector<Int> ring_coeffs(n);
  for (int i = 0; i < n; ++i) {
    if (!is_integral(gen.c[i])) throw InternalCheckFailed("recovered generator is not integral");
    ring_coeffs[i] = gen.c[i].get_num();
  }
  return gs_unmap(C, ring_coeffs);
}

}  // namespace symlat
