#include <doctest.h>

#include "fairdiv/ef_feasibility.hpp"
#include "fairdiv/error.hpp"
#include "fairdiv/fairness.hpp"
#include "support.hpp"

using namespace fairdiv;
using namespace fairdiv::testing;

namespace {

GammaSystem system_of(std::vector<AdditiveValuation> v, std::vector<std::int64_t> m) {
  return GammaSystem(std::move(v), std::vector<Rational>(m.begin(), m.end()));
}

// Complete, nonnegative and envy-free, checked straight from the bundle matrix.
bool satisfies_ef_program(const Allocation& alloc) {
  const auto& inst = alloc.instance();
  for (TypeIndex a = 0; a < inst.types(); ++a) {
    std::int64_t sum = 0;
    for (const auto& b : alloc.bundles()) {
      if (b[a] < 0) return false;
      sum += b[a];
    }
    if (sum != inst.supply()[a]) return false;
  }
  for (AgentIndex i = 0; i < alloc.agents(); ++i) {
    for (AgentIndex j = 0; j < alloc.agents(); ++j) {
      Rational own, other;
      for (TypeIndex a = 0; a < inst.types(); ++a) {
        own += inst.valuation(i)[a] * Rational(alloc.bundle(i)[a]);
        other += inst.valuation(i)[a] * Rational(alloc.bundle(j)[a]);
      }
      if (own < other) return false;
    }
  }
  return true;
}

XiVector random_point(Rng& rng, std::size_t d) {
  XiVector xi(d);
  for (auto& x : xi) x = Rational(uniform(rng, -12, 12), uniform(rng, 1, 4));
  return xi;
}

}  // namespace

TEST_CASE("zero point is feasible") {
  const auto sys = system_of({AdditiveValuation{2, 1}, AdditiveValuation{1, 2}, AdditiveValuation{1, 1}}, {4, 0});
  CHECK(gamma_feasible(sys, XiVector(sys.dimension())));
  CHECK_THROWS_AS(gamma_feasible(sys, XiVector(3)), Error);
}

TEST_CASE("last bundle from differences") {
  const auto three = system_of({AdditiveValuation{1, 1}, AdditiveValuation{1, 2}, AdditiveValuation{2, 1}}, {6, 6});
  CHECK(x_n_of_xi(three, XiVector(4)) == std::vector<Rational>{Rational(2), Rational(2)});
  const auto pair = system_of({AdditiveValuation{1}, AdditiveValuation{1}}, {5});
  CHECK(x_n_of_xi(pair, XiVector{Rational(1)}) == std::vector<Rational>{Rational(2)});
  const auto trio = system_of({AdditiveValuation{1}, AdditiveValuation{1}, AdditiveValuation{1}}, {7});
  CHECK(x_n_of_xi(trio, XiVector{Rational(1), Rational(1)}) == std::vector<Rational>{Rational(4, 3)});
  CHECK_FALSE(reconstruct_allocation(trio, IntXiVector{1, 1}));
  const auto back = reconstruct_allocation(pair, IntXiVector{1});
  REQUIRE(back);
  CHECK(back->bundle(0) == ItemVector{3});
  CHECK(back->bundle(1) == ItemVector{2});
}

TEST_CASE("reconstruct equal split") {
  const AdditiveValuation v{1, 1};
  const auto sys = system_of({v, v, v}, {6, 6});
  const auto a = reconstruct_allocation(sys, IntXiVector(4, 0));
  REQUIRE(a);
  for (AgentIndex i = 0; i < 3; ++i) CHECK(a->bundle(i) == ItemVector{2, 2});
  CHECK(check_ef(*a).satisfied);
}

TEST_CASE("corner choice") {
  const auto trio = system_of({AdditiveValuation{1}, AdditiveValuation{1}, AdditiveValuation{1}}, {7});
  CHECK(corner_point(trio, IntXiVector{0, 0}) == IntXiVector{1, 0});
  const auto x = reconstruct_allocation(trio, corner_point(trio, IntXiVector{0, 0}));
  REQUIRE(x);
  CHECK(x->bundle(0) == ItemVector{3});
  CHECK(x->bundle(1) == ItemVector{2});
  CHECK(x->bundle(2) == ItemVector{2});
  CHECK(x->complete());
  // the corner is outside the system, so the certified path refuses it
  try {
    cube_corner(trio, IntXiVector{0, 0});
    FAIL("expected invariant error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invariant_violated);
  }

  const auto even = system_of({AdditiveValuation{1}, AdditiveValuation{1}, AdditiveValuation{1}}, {6});
  CHECK(corner_point(even, IntXiVector{0, 0}) == IntXiVector{0, 0});
  CHECK(cube_corner(even, IntXiVector{0, 0}) == *reconstruct_allocation(even, IntXiVector{0, 0}));
}

TEST_CASE("cube search") {
  const AdditiveValuation v{1, 1};
  const auto same = system_of({v, v}, {2, 2});
  for (std::int64_t radius = 0; radius <= 4; ++radius) CHECK_FALSE(find_integer_cube(same, radius));

  const auto cross = system_of({AdditiveValuation{2, 1}, AdditiveValuation{1, 2}}, {1, 1});
  for (std::int64_t radius = 0; radius <= 6; ++radius) CHECK_FALSE(find_integer_cube(cross, radius));
  // yet an EF allocation exists
  const auto ef = ef_bruteforce(cross.instance());
  REQUIRE(ef);
  CHECK(ef->bundle(0) == ItemVector{1, 0});
  CHECK(ef->bundle(1) == ItemVector{0, 1});

  const auto tiny = system_of({AdditiveValuation{2, 1}, AdditiveValuation{1, 2}}, {0, 0});
  CHECK_FALSE(find_integer_cube(tiny, 3));

  CubeSearchOptions narrow;
  narrow.max_dimension = 1;
  try {
    find_integer_cube(cross, 1, narrow);
    FAIL("expected cap refusal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::cap_exceeded);
  }
}

TEST_CASE("cube search agrees with corner enumeration") {
  Rng rng(4);
  for (int trial = 0; trial < 120; ++trial) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 3));
    std::vector<AdditiveValuation> vals;
    for (std::size_t i = 0; i < n; ++i) vals.push_back(random_valuation(rng, 2, 6));
    const auto sys = system_of(vals, {uniform(rng, 0, 14), uniform(rng, 0, 14)});
    const std::int64_t radius = uniform(rng, 0, 3);
    const auto hit = find_integer_cube(sys, radius);
    // first box point in lexicographic order with a full cube
    std::optional<IntXiVector> expect;
    const auto d = sys.dimension();
    IntXiVector xi(d, -radius);
    while (true) {
      if (cube_feasible(sys, xi)) {
        expect = xi;
        break;
      }
      std::size_t k = d;
      while (k > 0 && xi[k - 1] == radius) xi[--k] = -radius;
      if (k == 0) break;
      ++xi[k - 1];
    }
    CHECK(hit == expect);
    if (hit) {
      const auto a = cube_corner(sys, *hit);
      CHECK(satisfies_ef_program(a));
    }
  }
}

TEST_CASE("distinct valuations") {
  CHECK_FALSE(distinct_valuations(std::vector<AdditiveValuation>{{1, 2}, {2, 4}}));
  CHECK(distinct_valuations(std::vector<AdditiveValuation>{{1, 2}, {2, 1}}));
  const auto table = table_instance();
  CHECK(distinct_valuations(table->valuations()));
}

TEST_CASE("scan for r") {
  const std::vector<AdditiveValuation> vals{{2, 1}, {1, 2}};
  const auto res = scan_min_r(vals, 50);
  REQUIRE(res.r);
  CHECK(res.certified());
  Rng rng(8);
  for (int k = 0; k < 5; ++k) {
    const std::vector<std::int64_t> m{*res.r + uniform(rng, 0, 10), *res.r + uniform(rng, 0, 10)};
    const auto sys = system_of(vals, m);
    // the cube found at r * 1 stays inside the larger system
    CHECK(cube_feasible(sys, res.xi_star));
    const auto a = cube_corner(sys, res.xi_star);
    CHECK(check_ef(a).satisfied);
    CHECK(satisfies_ef_program(a));
  }

  try {
    scan_min_r(std::vector<AdditiveValuation>{{1, 1}, {1, 1}}, 5);
    FAIL("expected precondition error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition_failed);
  }
  try {
    scan_min_r(std::vector<AdditiveValuation>{{1}, {2}}, 5);
    FAIL("expected precondition error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition_failed);
  }
}

TEST_CASE("radius policy") {
  CHECK(RadiusPolicy::parse("r").radius_for(7) == 7);
  CHECK(RadiusPolicy::parse("3r").radius_for(7) == 21);
  CHECK(RadiusPolicy::parse("4").radius_for(7) == 4);
  CHECK(RadiusPolicy::parse("3r").str() == "3r");
  CHECK(RadiusPolicy{}.str() == "r");
  CHECK_THROWS_AS(RadiusPolicy::parse("x"), Error);
  CHECK_THROWS_AS(RadiusPolicy::parse(""), Error);
}

TEST_CASE("difference transform round trip") {
  Rng rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 5));
    const auto t = static_cast<std::size_t>(uniform(rng, 1, 3));
    const auto inst = random_instance(rng, n, t, 15, 5);
    const auto alloc = random_complete(rng, inst);
    const auto sys = GammaSystem::from_instance(*inst);
    const auto xi = xi_of_allocation(alloc);
    CHECK(xi.size() == sys.dimension());
    const auto back = reconstruct_allocation(sys, xi);
    REQUIRE(back);
    CHECK(*back == alloc);
    CHECK(gamma_feasible(sys, to_rational(xi)) == check_ef(alloc).satisfied);
  }
}

TEST_CASE("scaling and containment") {
  Rng rng(6);
  for (int trial = 0; trial < 500; ++trial) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 4));
    std::vector<AdditiveValuation> vals;
    for (std::size_t i = 0; i < n; ++i) vals.push_back(random_valuation(rng, 2, 5));
    const std::vector<Rational> m{Rational(uniform(rng, 0, 20)), Rational(uniform(rng, 0, 20))};
    const GammaSystem sys(vals, m);
    const auto xi = random_point(rng, sys.dimension());
    const bool in = gamma_feasible(sys, xi);
    for (const Rational lambda : {Rational(2), Rational(3), Rational(1, 2)}) {
      std::vector<Rational> lm;
      for (const auto& x : m) lm.push_back(lambda * x);
      XiVector lxi;
      for (const auto& x : xi) lxi.push_back(lambda * x);
      CHECK(gamma_feasible(sys.with_supply(lm), lxi) == in);
    }
    if (in) {
      std::vector<Rational> bigger{m[0] + uniform(rng, 0, 5), m[1] + uniform(rng, 0, 5)};
      CHECK(gamma_feasible(sys.with_supply(bigger), xi));
    }
  }
}

TEST_CASE("brute force EF") {
  CHECK(ef_bruteforce(table_instance()));
  CHECK_FALSE(ef_bruteforce(make_instance(ItemVector{1}, {AdditiveValuation{1}, AdditiveValuation{1}})));
}
