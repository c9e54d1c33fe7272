#include <catch2/catch_amalgamated.hpp>

#include "symlat/modring.hpp"

using namespace symlat;

namespace {

RingZ elt(const GroupContext& G, std::vector<long> c) {
  RingZ r = ring_zero<Int>(G);
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
  return r;
}

}  // namespace

TEST_CASE("group construction and transversal") {
  auto G2 = make_group({2}, GroupElement{{1}});
  REQUIRE(G2.n == 1);
  REQUIRE(G2.k == 2);
  REQUIRE(G2.S.size() == 1);
  REQUIRE(G2.is_identity(G2.S[0]));

  auto G4 = make_group({4}, GroupElement{{2}});
  REQUIRE(G4.n == 2);
  REQUIRE(G4.k == 4);
  REQUIRE(G4.S == std::vector<GroupElement>{GroupElement{{0}}, GroupElement{{1}}});

  auto G6 = make_group({6}, GroupElement{{3}});
  REQUIRE(G6.n == 3);
  REQUIRE(G6.k == 6);
  REQUIRE(G6.S ==
          std::vector<GroupElement>{GroupElement{{0}}, GroupElement{{1}}, GroupElement{{2}}});

  // Exactly one of sigma, u*sigma lies in S.
  for (const auto& g : G6.elements) {
    int pos, sign;
    G6.decompose(g, pos, sign);
    GroupElement ug = G6.mul(G6.u, g);
    int pos2, sign2;
    G6.decompose(ug, pos2, sign2);
    REQUIRE(pos == pos2);
    REQUIRE(sign == -sign2);
  }
}

TEST_CASE("group construction rejects bad input") {
  REQUIRE_THROWS_AS(make_group({4}, GroupElement{{1}}), BadU);   // order 4, not 2
  REQUIRE_THROWS_AS(make_group({4}, GroupElement{{0}}), BadU);   // identity
  REQUIRE_THROWS_AS(make_group({3}, GroupElement{{0}}), Error);  // odd order
  REQUIRE_THROWS_AS(make_group({0}, GroupElement{{0}}), BadInput);
}

TEST_CASE("element arithmetic") {
  auto G4 = make_group({4}, GroupElement{{2}});
  REQUIRE(G4.mul(GroupElement{{1}}, GroupElement{{1}}) == G4.u);
  auto G6 = make_group({6}, GroupElement{{3}});
  REQUIRE(G6.inv(GroupElement{{1}}) == GroupElement{{5}});
  auto G24 = make_group({2, 4}, GroupElement{{0, 2}});
  REQUIRE(G24.mul(GroupElement{{1, 1}}, GroupElement{{1, 3}}) == G24.identity());

  // Exponent is minimal: sigma^k = 1 for all sigma, and some sigma has order k.
  for (auto& G : {G4, G6}) {
    bool attained = false;
    for (const auto& g : G.elements) {
      REQUIRE(G.is_identity(G.pow(g, G.k)));
      int64_t o = 1;
      while (!G.is_identity(G.pow(g, o))) ++o;
      if (o == G.k) attained = true;
    }
    REQUIRE(attained);
  }
}

TEST_CASE("ring multiplication applies u = -1") {
  auto G4 = make_group({4}, GroupElement{{2}});
  // (a + b g)(c + d g) = (ac - bd) + (ad + bc) g since g^2 = u = -1.
  auto p = ring_mul(elt(G4, {2, 3}), elt(G4, {5, 7}));
  REQUIRE(p.c[0] == 2 * 5 - 3 * 7);
  REQUIRE(p.c[1] == 2 * 7 + 3 * 5);

  auto G6 = make_group({6}, GroupElement{{3}});
  // (1 + g)(1 + g^2) = 1 + g + g^2 + g^3 = g + g^2 since g^3 = u = -1.
  auto q = ring_mul(elt(G6, {1, 1, 0}), elt(G6, {1, 0, 1}));
  REQUIRE(q == elt(G6, {0, 1, 1}));

  auto a = elt(G6, {3, -1, 4});
  REQUIRE(ring_mul(a, ring_one<Int>(G6)) == a);
}

TEST_CASE("conjugation") {
  auto G4 = make_group({4}, GroupElement{{2}});
  REQUIRE(conj(elt(G4, {2, 3})) == elt(G4, {2, -3}));  // g^{-1} = u g
  auto G6 = make_group({6}, GroupElement{{3}});
  REQUIRE(conj(elt(G6, {0, 1, 0})) == elt(G6, {0, 0, -1}));  // g^{-1} = u g^2
  REQUIRE(conj(ring_one<Int>(G6)) == ring_one<Int>(G6));

  // conj is an involutive ring automorphism.
  auto a = elt(G6, {2, -3, 1}), b = elt(G6, {0, 5, -2});
  REQUIRE(conj(conj(a)) == a);
  REQUIRE(conj(ring_mul(a, b)) == ring_mul(conj(a), conj(b)));
}

TEST_CASE("scaled trace") {
  auto G6 = make_group({6}, GroupElement{{3}});
  REQUIRE(trace(ring_one<Int>(G6)) == 1);
  REQUIRE(trace(ring_of_group<Int>(G6, G6.u)) == -1);
  REQUIRE(trace(ring_of_group<Int>(G6, GroupElement{{1}})) == 0);
  REQUIRE(trace(ring_of_group<Int>(G6, GroupElement{{4}})) == 0);

  auto a = elt(G6, {2, -3, 1});
  REQUIRE(trace(conj(a)) == trace(a));
  REQUIRE(trace(ring_mul(a, conj(a))) == 4 + 9 + 1);

  // a = sum_{sigma in S} t(sigma^{-1} a) sigma.
  RingZ rebuilt = ring_zero<Int>(G6);
  for (int s = 0; s < G6.n; ++s) {
    auto shifted = ring_mul(ring_of_group<Int>(G6, G6.inv(G6.S[s])), a);
    rebuilt.c[s] = trace(shifted);
  }
  REQUIRE(rebuilt == a);
}

TEST_CASE("rational inverse") {
  auto G4 = make_group({4}, GroupElement{{2}});
  RingQ one_plus_g{&G4, {Rat(1), Rat(1)}};
  auto inv = ring_inverse(one_plus_g);
  REQUIRE(inv.c[0] == Rat(1, 2));
  REQUIRE(inv.c[1] == Rat(-1, 2));
  REQUIRE(ring_mul(one_plus_g, inv) == ring_one<Rat>(G4));

  // 1 + g is a zero divisor in Q<Z/2 x Z/2> with u = (1,0): g = second generator.
  auto G22 = make_group({2, 2}, GroupElement{{1, 0}});
  RingQ z{&G22, {Rat(1), Rat(1)}};
  REQUIRE_THROWS_AS(ring_inverse(z), NotAUnitError);
}

TEST_CASE("mod-m ring") {
  auto G2 = make_group({2}, GroupElement{{1}});
  RingM two{&G2, Int(5), {Int(2)}};
  auto inv = ring_inverse(two);
  REQUIRE(inv.c[0] == 3);

  RingM three{&G2, Int(7), {Int(3)}};
  REQUIRE(pow_mod(three, Int(5)).c[0] == 5);
  REQUIRE(pow_mod(three, Int(0)) == ring_m_from(ring_one<Int>(G2), Int(7)));
  REQUIRE(pow_mod(three, Int(1)) == three);

  RingM other{&G2, Int(5), {Int(3)}};
  REQUIRE_THROWS_AS(ring_mul(three, other), KindMismatch);
}

TEST_CASE("characters") {
  auto G6 = make_group({6}, GroupElement{{3}});
  auto tab = characters(G6);
  REQUIRE(tab.values.size() == static_cast<size_t>(G6.n));
  auto ones = char_eval(tab, ring_one<Int>(G6));
  for (auto z : ones) REQUIRE(std::abs(z - std::complex<double>(1, 0)) < 1e-9);

  // t(a) = (1/n) sum_psi psi(a).
  auto a = elt(G6, {2, -3, 1});
  auto vals = char_eval(tab, a);
  std::complex<double> s = 0;
  for (auto z : vals) s += z;
  REQUIRE(std::abs(s / 3.0 - std::complex<double>(2, 0)) < 1e-9);

  // Z/4: psi(g) is a primitive 4th root of unity.
  auto G4 = make_group({4}, GroupElement{{2}});
  auto tab4 = characters(G4);
  auto g = char_eval(tab4, elt(G4, {0, 1}));
  for (auto z : g) REQUIRE(std::abs(z * z + std::complex<double>(1, 0)) < 1e-9);
}

TEST_CASE("multiplication matrix") {
  auto G6 = make_group({6}, GroupElement{{3}});
  auto a = elt(G6, {1, 2, -1});
  auto M = mul_matrix(a);
  auto b = elt(G6, {0, 3, 5});
  auto prod = ring_mul(a, b);
  auto via_matrix = M * b.c;
  REQUIRE(via_matrix == prod.c);
}
