#pragma once

// Deterministic number theory by trial division: primality, factorization
// with a configurable ceiling, and the auxiliary prime-power search.

#include <utility>
#include <vector>

#include "symlat/common.hpp"

namespace symlat {

// Deterministic primality by trial division. Throws FactorTooLarge when the
// scan would exceed `bound` candidate divisors (i.e. we cannot certify).
inline bool is_prime_trial(const Int& x, const Int& bound = Int(100000000)) {
  if (x < 2) return false;
  if (x < 4) return true;
  if (x % 2 == 0) return false;
  for (Int d = 3; d * d <= x; d += 2) {
    if (d > bound) throw FactorTooLarge("primality scan exceeded trial-division bound");
    if (x % d == 0) return false;
  }
  return true;
}

// Prime factorization (p, e) pairs, ascending p. Trial division up to
// `bound`; a remaining cofactor c is accepted as prime when c <= bound^2
// (no divisor below its square root), otherwise FactorTooLarge.
inline std::vector<std::pair<Int, Int>> factorize(const Int& m, const Int& bound = Int(1000000)) {
  if (m < 1) throw BadInput("factorize expects a positive integer");
  std::vector<std::pair<Int, Int>> out;
  Int rest = m;
  auto strip = [&](const Int& p) {
    Int e = 0;
    while (rest % p == 0) { rest /= p; ++e; }
    if (e > 0) out.emplace_back(p, e);
  };
  strip(Int(2));
  for (Int d = 3; d * d <= rest; d += 2) {
    if (d > bound) throw FactorTooLarge("factorization exceeded trial-division bound");
    strip(d);
  }
  if (rest > 1) {
    if (rest > bound * bound) throw FactorTooLarge("unfactored cofactor too large to certify prime");
    out.emplace_back(rest, Int(1));
  }
  return out;
}

struct AuxPrimes {
  Int p, q;
  Int r, s;
  Int ell, m;
  Int k_ell, k_m;
};

// Smallest prime p = 1 mod k; smallest r with p^r >= 2^(n/2)+1; smallest
// prime q = p + jk with gcd((p-1)p, q-1) = k; smallest s likewise.
inline AuxPrimes find_aux_primes(int64_t n, int64_t k, const Int& bound = Int(100000000)) {
  if (k < 2 || k % 2 != 0) throw BadInput("k must be even and >= 2");
  AuxPrimes a;
  // p^r >= 2^(n/2) + 1  <=>  (p^r - 1)^2 >= 2^n.
  Int two_n = Int(1) << static_cast<unsigned long>(n);
  auto big_enough = [&](const Int& x) { return (x - 1) * (x - 1) >= two_n; };

  for (Int p = Int(k) + 1;; p += k) {
    if (p > bound) throw FactorTooLarge("prime search exceeded bound");
    if (is_prime_trial(p, bound)) { a.p = p; break; }
  }
  a.r = 1;
  a.ell = a.p;
  while (!big_enough(a.ell)) { a.ell *= a.p; ++a.r; }

  Int pp = (a.p - 1) * a.p;
  for (Int q = a.p + k;; q += k) {
    if (q > bound) throw FactorTooLarge("prime search exceeded bound");
    if (!is_prime_trial(q, bound)) continue;
    Int g = gcd(pp, q - 1);
    if (g == k) { a.q = q; break; }
  }
  a.s = 1;
  a.m = a.q;
  while (!big_enough(a.m)) { a.m *= a.q; ++a.s; }

  // k(p^j) = (p-1)p^(j-1) when p = 1 mod k.
  a.k_ell = a.p - 1;
  for (Int i = 1; i < a.r; ++i) a.k_ell *= a.p;
  a.k_m = a.q - 1;
  for (Int i = 1; i < a.s; ++i) a.k_m *= a.q;
  return a;
}

// Exponent of (Z<G>/(p^j))^* for p = 1 mod k: equals (p-1)p^(j-1).
inline Int exponent_mod(int64_t k, const Int& p, int64_t j) {
  if (mod_reduce(p, Int(k)) != 1) throw HypothesisFailed("p must be 1 mod k");
  Int e = p - 1;
  for (int64_t i = 1; i < j; ++i) e *= p;
  return e;
}

}  // namespace symlat
