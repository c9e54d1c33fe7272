#pragma once

// Arithmetic in the modified group ring A<G> = A[G]/(u+1), A in {Z, Z/m, Q}.
// Elements are coefficient vectors indexed by the transversal S; a term at
// u*sigma is stored as the negated coefficient at sigma.

#include <complex>
#include <vector>

#include "symlat/group.hpp"
#include "symlat/linalg.hpp"

namespace symlat {

template <class K>
struct RingElt {
  const GroupContext* G = nullptr;
  std::vector<K> c;  // length n, indexed by S

  bool operator==(const RingElt& o) const { return c == o.c; }
};

using RingZ = RingElt<Int>;
using RingQ = RingElt<Rat>;

// Mod-m element; carries its modulus.
struct RingM {
  const GroupContext* G = nullptr;
  Int m;
  std::vector<Int> c;

  bool operator==(const RingM& o) const { return m == o.m && c == o.c; }
};

template <class K>
RingElt<K> ring_zero(const GroupContext& G) {
  return RingElt<K>{&G, std::vector<K>(G.n, K(0))};
}

template <class K>
RingElt<K> ring_one(const GroupContext& G) {
  auto r = ring_zero<K>(G);
  r.c[0] = 1;
  return r;
}

// The image of the group element g as a ring element (+-sigma in S-form).
template <class K>
RingElt<K> ring_of_group(const GroupContext& G, const GroupElement& g) {
  auto r = ring_zero<K>(G);
  int pos, sign;
  G.decompose(g, pos, sign);
  r.c[pos] = sign;
  return r;
}

template <class K>
RingElt<K> ring_add(const RingElt<K>& a, const RingElt<K>& b) {
  RingElt<K> r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

template <class K>
RingElt<K> ring_sub(const RingElt<K>& a, const RingElt<K>& b) {
  RingElt<K> r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}

template <class K>
RingElt<K> ring_neg(const RingElt<K>& a) {
  RingElt<K> r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

template <class K>
RingElt<K> ring_scale(const RingElt<K>& a, const K& s) {
  RingElt<K> r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

template <class K>
RingElt<K> ring_mul(const RingElt<K>& a, const RingElt<K>& b) {
  if (a.G != b.G) throw KindMismatch("ring elements from different groups");
  const GroupContext& G = *a.G;
  auto r = ring_zero<K>(G);
  for (int i = 0; i < G.n; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < G.n; ++j) {
      if (b.c[j] == 0) continue;
      GroupElement g = G.mul(G.S[i], G.S[j]);
      int pos, sign;
      G.decompose(g, pos, sign);
      if (sign > 0)
        r.c[pos] += a.c[i] * b.c[j];
      else
        r.c[pos] -= a.c[i] * b.c[j];
    }
  }
  return r;
}

template <class K>
RingElt<K> conj(const RingElt<K>& a) {
  const GroupContext& G = *a.G;
  auto r = ring_zero<K>(G);
  for (int i = 0; i < G.n; ++i) {
    if (a.c[i] == 0) continue;
    int pos, sign;
    G.decompose(G.inv(G.S[i]), pos, sign);
    if (sign > 0)
      r.c[pos] += a.c[i];
    else
      r.c[pos] -= a.c[i];
  }
  return r;
}

// Scaled trace t: coefficient at the identity.
template <class K>
K trace(const RingElt<K>& a) {
  return a.c[0];
}

template <class K>
RingElt<K> ring_pow(const RingElt<K>& a, unsigned long e) {
  auto r = ring_one<K>(*a.G);
  auto base = a;
  while (e) {
    if (e & 1) r = ring_mul(r, base);
    if (e >>= 1) base = ring_mul(base, base);
  }
  return r;
}

// Multiplication-by-a matrix on the S-basis (column j = a * S[j]).
template <class K>
Mat<K> mul_matrix(const RingElt<K>& a) {
  const GroupContext& G = *a.G;
  Mat<K> M(static_cast<int>(G.n), static_cast<int>(G.n));
  for (int j = 0; j < G.n; ++j) {
    auto col = ring_mul(a, ring_of_group<K>(G, G.S[j]));
    for (int i = 0; i < G.n; ++i) M(i, j) = col.c[i];
  }
  return M;
}

inline RingQ to_rational(const RingZ& a) {
  RingQ r{a.G, {}};
  r.c.reserve(a.c.size());
  for (const auto& x : a.c) r.c.emplace_back(x);
  return r;
}

inline RingZ to_integral(const RingQ& a) {
  RingZ r{a.G, {}};
  for (const auto& x : a.c) {
    if (!is_integral(x)) throw NotIntegral("rational ring element is not integral");
    r.c.push_back(x.get_num());
  }
  return r;
}

// Rational inverse: solve M_a x = e_1.
inline RingQ ring_inverse(const RingQ& a) {
  const GroupContext& G = *a.G;
  std::vector<Rat> e1(G.n, Rat(0));
  e1[0] = 1;
  auto x = solve_q(mul_matrix(a), e1);
  if (!x) throw NotAUnitError();
  return RingQ{a.G, *x};
}

// ---- mod-m ring ----

inline void check_same_mod(const RingM& a, const RingM& b) {
  if (a.G != b.G || a.m != b.m) throw KindMismatch("mixed moduli or groups");
}

inline RingM ring_m_zero(const GroupContext& G, const Int& m) {
  return RingM{&G, m, std::vector<Int>(G.n, Int(0))};
}

inline RingM ring_m_from(const RingZ& a, const Int& m) {
  RingM r{a.G, m, {}};
  for (const auto& x : a.c) r.c.push_back(mod_reduce(x, m));
  return r;
}

inline RingZ ring_m_lift(const RingM& a) {
  return RingZ{a.G, a.c};  // canonical representatives in [0, m)
}

inline RingM ring_mul(const RingM& a, const RingM& b) {
  check_same_mod(a, b);
  auto z = ring_mul(RingZ{a.G, a.c}, RingZ{b.G, b.c});
  return ring_m_from(z, a.m);
}

inline RingM conj(const RingM& a) {
  return ring_m_from(conj(RingZ{a.G, a.c}), a.m);
}

// a^e mod m for arbitrarily large e >= 0.
inline RingM pow_mod(const RingM& a, const Int& e) {
  if (e < 0) throw BadInput("negative exponent");
  RingM r = ring_m_from(ring_one<Int>(*a.G), a.m);
  RingM base = a;
  Int ee = e;
  while (ee > 0) {
    if (mpz_odd_p(ee.get_mpz_t())) r = ring_mul(r, base);
    ee >>= 1;
    if (ee > 0) base = ring_mul(base, base);
  }
  return r;
}

// Inverse mod m via the exact rational inverse reduced mod m.
inline RingM ring_inverse(const RingM& a) {
  const GroupContext& G = *a.G;
  MatZ M(static_cast<int>(G.n), static_cast<int>(G.n));
  {
    auto Mz = mul_matrix(RingZ{a.G, a.c});
    for (int i = 0; i < G.n; ++i)
      for (int j = 0; j < G.n; ++j) M(i, j) = Mz(i, j);
  }
  std::vector<Int> e1(G.n, Int(0));
  e1[0] = 1;
  auto x = solve_mod(M, e1, a.m);  // throws NotAUnitError when not a unit
  return RingM{a.G, a.m, x};
}

// ---- character table (floating point, diagnostics only) ----

struct CharacterTable {
  std::vector<std::vector<std::complex<double>>> values;  // rows: psi, cols: S
};

inline CharacterTable characters(const GroupContext& G) {
  constexpr double pi = 3.14159265358979323846;
  CharacterTable tab;
  // Enumerate all characters chi_t(g_j) = exp(2*pi*i*t_j/d_j); keep chi(u) = -1.
  std::vector<int64_t> t(G.orders.size(), 0);
  int64_t total = G.order();
  for (int64_t c = 0; c < total; ++c) {
    double uphase = 0;
    for (size_t i = 0; i < G.orders.size(); ++i)
      uphase += 2.0 * pi * static_cast<double>(t[i]) * static_cast<double>(G.u.exps[i]) /
                static_cast<double>(G.orders[i]);
    std::complex<double> on_u = std::polar(1.0, uphase);
    if (std::abs(on_u - std::complex<double>(-1.0, 0.0)) < 1e-9) {
      std::vector<std::complex<double>> row;
      for (const auto& sigma : G.S) {
        double phase = 0;
        for (size_t i = 0; i < G.orders.size(); ++i)
          phase += 2.0 * pi * static_cast<double>(t[i]) * static_cast<double>(sigma.exps[i]) /
                   static_cast<double>(G.orders[i]);
        row.push_back(std::polar(1.0, phase));
      }
      tab.values.push_back(std::move(row));
    }
    for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
      if (++t[i] < G.orders[i]) break;
      t[i] = 0;
    }
  }
  return tab;
}

template <class K>
std::vector<std::complex<double>> char_eval(const CharacterTable& tab, const RingElt<K>& a) {
  std::vector<std::complex<double>> out;
  for (const auto& row : tab.values) {
    std::complex<double> s = 0;
    for (size_t j = 0; j < row.size(); ++j) {
      double coef;
      if constexpr (std::is_same_v<K, Rat>)
        coef = a.c[j].get_d();
      else
        coef = a.c[j].get_d();
      s += coef * row[j];
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace symlat
