#pragma once

// The graded order A = Lambda/(nu - 1): pieces L_(I^i, w^i) for i < k, the
// homogeneous roots of unity mu(A) via exact norm-1 enumeration, and k-th
// root extraction of a short vector nu.

#include <map>
#include <optional>

#include "symlat/ideals.hpp"

namespace symlat {

struct GradedOrder {
  const GroupContext* G = nullptr;
  int64_t k = 0;
  std::vector<IdealRealization> powers;  // powers[i] = I^i for i = 0..k (powers[0] = Z<G>)
  std::vector<RingQ> wpow;               // w^i
  std::vector<Int> nu;                   // coords of nu on powers[k]'s basis

  RingQ nu_elt() const { return powers[static_cast<size_t>(k)].elt_of_coords(nu); }

  // Gram of the degree-i piece L_(I^i, w^i).
  MatZ piece_gram(int64_t i) const {
    IdealRealization A = powers[static_cast<size_t>(i)];
    A.w = wpow[static_cast<size_t>(i)];
    return gram_of(A);
  }
};

// Build from a realization; shares the caller's ideal powers so coordinates
// stay consistent across engine steps.
inline GradedOrder make_graded_order(const GroupContext& G,
                                     std::vector<IdealRealization> powers,
                                     const RingQ& w, std::vector<Int> nu_coords) {
  GradedOrder A;
  A.G = &G;
  A.k = static_cast<int64_t>(powers.size()) - 1;
  A.powers = std::move(powers);
  A.wpow.push_back(ring_one<Rat>(G));
  for (int64_t i = 1; i <= A.k; ++i) A.wpow.push_back(ring_mul(A.wpow.back(), w));
  A.nu = std::move(nu_coords);
  // nu must be short: nu . conj(nu) / w^k = 1.
  RingQ nu = A.nu_elt();
  RingQ prod = ring_mul(ring_mul(nu, conj(nu)), ring_inverse(A.wpow.back()));
  if (!(prod == ring_one<Rat>(G))) throw NuNotShort();
  return A;
}

inline GradedOrder make_graded_order(const GroupContext& G, const IdealRealization& I,
                                     const RingQ& w, const std::vector<Int>& nu_coords) {
  std::vector<IdealRealization> powers;
  powers.push_back(unit_ideal(G));
  powers.push_back(I);
  int64_t k = G.k;
  for (int64_t i = 2; i <= k; ++i) powers.push_back(reduce_ideal(ideal_mul(powers.back(), I)));
  return make_graded_order(G, std::move(powers), w, nu_coords);
}

struct Root {
  int64_t degree;
  std::vector<Int> coords;  // on the basis of powers[degree]
  bool operator==(const Root& o) const { return degree == o.degree && coords == o.coords; }
};

// All homogeneous roots of unity: norm-1 vectors of each graded piece.
inline std::vector<Root> mu_of_order(const GradedOrder& A) {
  std::vector<Root> out;
  for (int64_t i = 0; i < A.k; ++i) {
    auto vecs = enumerate_norm_one(GramLattice{A.piece_gram(i)});
    for (auto& v : vecs) out.push_back(Root{i, std::move(v)});
  }
  size_t two_n = static_cast<size_t>(2 * A.G->n);
  if (out.size() % two_n != 0 || (two_n * static_cast<size_t>(A.k)) % out.size() != 0)
    throw InternalCheckFailed("#mu(A) violates the divisibility constraints");
  return out;
}

// Twisted product of homogeneous roots: degrees add mod k, dividing by nu on
// wrap-around.
inline Root root_mul(const GradedOrder& A, const Root& a, const Root& b) {
  RingQ x = A.powers[static_cast<size_t>(a.degree)].elt_of_coords(a.coords);
  RingQ y = A.powers[static_cast<size_t>(b.degree)].elt_of_coords(b.coords);
  RingQ z = ring_mul(x, y);
  int64_t deg = a.degree + b.degree;
  if (deg >= A.k) {
    z = ring_mul(z, ring_inverse(A.nu_elt()));
    deg -= A.k;
  }
  auto coords = A.powers[static_cast<size_t>(deg)].coords_of(z);
  Root r{deg, {}};
  for (auto& c : coords) {
    if (!is_integral(c)) throw InternalCheckFailed("twisted product left the order");
    r.coords.push_back(c.get_num());
  }
  return r;
}

enum class RootFailure { None, NoDegreeOneUnit, PowerMismatch };

struct RootResult {
  std::optional<std::vector<Int>> alpha;  // coords on I's basis
  RootFailure reason = RootFailure::None;
};

// Find alpha in mu(A) of degree 1 with alpha^k = nu.
inline RootResult extract_root_in(const GradedOrder& A) {
  RootResult res;
  auto shorts = enumerate_norm_one(GramLattice{A.piece_gram(1)});
  if (shorts.empty()) {
    res.reason = RootFailure::NoDegreeOneUnit;
    return res;
  }
  // All degree-1 short vectors have the same k-th power (they differ by some
  // sigma with sigma^k = 1), so checking one suffices.
  const auto& alpha = shorts.front();
  RingQ a = A.powers[1].elt_of_coords(alpha);
  RingQ ak = ring_one<Rat>(*A.G);
  for (int64_t t = 0; t < A.k; ++t) ak = ring_mul(ak, a);
  if (!(ak == A.nu_elt())) {
    res.reason = RootFailure::PowerMismatch;
    return res;
  }
  res.alpha = alpha;
  return res;
}

inline RootResult extract_root(const GroupContext& G, const IdealRealization& I, const RingQ& w,
                               const std::vector<Int>& nu_coords) {
  return extract_root_in(make_graded_order(G, I, w, nu_coords));
}

}  // namespace symlat
