#include <catch2/catch_amalgamated.hpp>

#include "symlat/roots.hpp"

using namespace symlat;

namespace {

std::vector<Int> int_coords(const IdealRealization& I, const RingQ& x) {
  auto c = I.coords_of(x);
  std::vector<Int> out;
  for (auto& r : c) {
    REQUIRE(is_integral(r));
    out.push_back(r.get_num());
  }
  return out;
}

GradedOrder standard_order(const GroupContext& G) {
  auto one = ring_one<Rat>(G);
  return make_graded_order(G, unit_ideal(G), one,
                           int_coords(unit_ideal(G), one));
}

}  // namespace

TEST_CASE("roots of unity of the standard order") {
  auto G6 = make_group({6}, GroupElement{{3}});
  auto A = standard_order(G6);
  auto mu = mu_of_order(A);
  REQUIRE(mu.size() == static_cast<size_t>(2 * G6.n * G6.k));  // 36

  // The degree-0 slice consists of the signed transversal elements.
  int deg0 = 0;
  for (const auto& r : mu) {
    if (r.degree != 0) continue;
    ++deg0;
    RingQ x = A.powers[0].elt_of_coords(r.coords);
    int nonzero = 0;
    for (const auto& c : x.c) {
      if (c != 0) {
        ++nonzero;
        REQUIRE((c == 1 || c == -1));
      }
    }
    REQUIRE(nonzero == 1);
  }
  REQUIRE(deg0 == 6);
}

TEST_CASE("twisted products of roots") {
  auto G6 = make_group({6}, GroupElement{{3}});
  auto A = standard_order(G6);

  auto root_of = [&](int64_t deg, const RingQ& x) {
    return Root{deg, int_coords(A.powers[static_cast<size_t>(deg)], x)};
  };
  RingQ g = to_rational(ring_of_group<Int>(G6, GroupElement{{1}}));
  RingQ one = ring_one<Rat>(G6);

  // Degrees add below k.
  auto p = root_mul(A, root_of(2, g), root_of(3, g));
  REQUIRE(p.degree == 5);
  REQUIRE(A.powers[5].elt_of_coords(p.coords) == ring_mul(g, g));

  // Wrap-around divides by nu = 1 here.
  auto q = root_mul(A, root_of(5, g), root_of(1, one));
  REQUIRE(q.degree == 0);
  REQUIRE(A.powers[0].elt_of_coords(q.coords) == g);

  // Products of roots are roots: closed under the twisted multiplication.
  auto mu = mu_of_order(A);
  const auto& a = mu[3];
  const auto& b = mu[17];
  auto c = root_mul(A, a, b);
  RingQ x = A.powers[static_cast<size_t>(c.degree)].elt_of_coords(c.coords);
  REQUIRE(ring_mul(x, conj(x)) == one);
}

TEST_CASE("root extraction on the standard order") {
  auto G6 = make_group({6}, GroupElement{{3}});
  auto A = standard_order(G6);
  auto res = extract_root_in(A);
  REQUIRE(res.alpha);
  RingQ a = A.powers[1].elt_of_coords(*res.alpha);
  RingQ ak = ring_one<Rat>(G6);
  for (int t = 0; t < 6; ++t) ak = ring_mul(ak, a);
  REQUIRE(ak == ring_one<Rat>(G6));
}

TEST_CASE("power mismatch is detected") {
  // nu = u = -1 in Z/4: short, but no degree-1 root has x^4 = -1.
  auto G4 = make_group({4}, GroupElement{{2}});
  RingQ minus_one = ring_one<Rat>(G4);
  minus_one.c[0] = -1;
  auto A = make_graded_order(G4, unit_ideal(G4), ring_one<Rat>(G4),
                             int_coords(unit_ideal(G4), minus_one));
  auto res = extract_root_in(A);
  REQUIRE(!res.alpha);
  REQUIRE(res.reason == RootFailure::PowerMismatch);
}

TEST_CASE("nu must be short") {
  auto G4 = make_group({4}, GroupElement{{2}});
  RingQ two = ring_one<Rat>(G4);
  two.c[0] = 2;
  REQUIRE_THROWS_AS(make_graded_order(G4, unit_ideal(G4), ring_one<Rat>(G4),
                                      int_coords(unit_ideal(G4), two)),
                    NuNotShort);
}
