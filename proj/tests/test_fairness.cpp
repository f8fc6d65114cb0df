#include <doctest.h>

#include <algorithm>

#include "fairdiv/error.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/geometry.hpp"
#include "support.hpp"

using namespace fairdiv;
using namespace fairdiv::testing;

namespace {

enum : AgentIndex { A = 0, B = 1, C = 2 };

// EFX by definition: nobody envies any strict subset of another bundle.
bool efx_by_definition(const Allocation& alloc) {
  for (AgentIndex i = 0; i < alloc.agents(); ++i) {
    for (AgentIndex j = 0; j < alloc.agents(); ++j) {
      if (i == j) continue;
      for (const auto& s : strict_subsets(alloc.bundle(j))) {
        if (alloc.own_value(i) < value(alloc.instance().valuation(i), s)) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("envies") {
  const auto inst = table_instance();
  const auto x = table_stuck(inst);
  CHECK_FALSE(envies(C, A, x));
  CHECK(x.value_of(C, C) == Rational(11));
  CHECK(x.value_of(C, A) == Rational(5) * Rational(193, 100));

  const auto twins = make_instance(ItemVector{2}, {AdditiveValuation{1}, AdditiveValuation{1}});
  const Allocation even(twins, {ItemVector{1}, ItemVector{1}});
  CHECK_FALSE(envies(0, 1, even));
  CHECK_THROWS_AS(envies(0, 0, even), Error);

  auto y = x;
  y.give(B, 1);
  CHECK(value(inst->valuation(A), ItemVector{5, 4, 0}) > y.own_value(A));
  CHECK(ItemVector{5, 4, 0}.strict_subset_of(y.bundle(B)));
}

TEST_CASE("intro instance fairness") {
  const auto inst = intro_instance();
  const Allocation good(inst, {ItemVector{1, 0, 0}, ItemVector{0, 1, 1}});
  CHECK(check_efx(good).satisfied);
  CHECK(check_ef1(good).satisfied);
  CHECK_FALSE(check_ef(good).satisfied);

  const Allocation lumpy(inst, {ItemVector{1, 1, 0}, ItemVector{0, 0, 1}});
  CHECK(check_ef1(lumpy).satisfied);
  const auto r = check_efx(lumpy);
  REQUIRE_FALSE(r.satisfied);
  REQUIRE(r.witness);
  CHECK(r.witness->observer == 1);
  CHECK(r.witness->envied == 0);
  CHECK(r.witness->removed_type == TypeIndex{1});
  CHECK(r.witness->own_value == Rational(5));
  CHECK(r.witness->other_value == Rational(10));
  CHECK(witness_bundle(lumpy, *r.witness) == ItemVector{1, 0, 0});
}

TEST_CASE("stuck allocation is EFX") {
  const auto inst = table_instance();
  CHECK(check_efx(table_stuck(inst)).satisfied);
}

TEST_CASE("ef witness and ef1 witness") {
  const auto inst = make_instance(ItemVector{2}, {AdditiveValuation{1}, AdditiveValuation{1}});
  const Allocation a(inst, {ItemVector{0}, ItemVector{2}});
  const auto ef = check_ef(a);
  REQUIRE(ef.witness);
  CHECK_FALSE(ef.witness->removed_type);
  CHECK(ef.witness->observer == 0);
  const auto ef1 = check_ef1(a);
  REQUIRE(ef1.witness);
  CHECK(ef1.witness->removed_type == TypeIndex{0});
  CHECK(ef1.witness->other_value == Rational(1));
  CHECK(check(a, Criterion::efx).criterion == Criterion::efx);
}

TEST_CASE("criterion names") {
  for (auto c : {Criterion::ef, Criterion::ef1, Criterion::efx}) CHECK(parse_criterion(to_string(c)) == c);
  CHECK_THROWS_AS(parse_criterion("efy"), Error);
}

TEST_CASE("empty bundles impose nothing under EFX") {
  const auto inst = make_instance(ItemVector{1}, {AdditiveValuation{1}, AdditiveValuation{1}});
  CHECK(check_efx(Allocation(inst, {ItemVector{1}, ItemVector{0}})).satisfied);
}

TEST_CASE("criteria implications and definitional EFX") {
  Rng rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    const auto n = static_cast<std::size_t>(uniform(rng, 2, 3));
    const auto t = static_cast<std::size_t>(uniform(rng, 1, 3));
    const auto inst = random_instance(rng, n, t, 3 * static_cast<std::int64_t>(n), 6);
    const auto alloc = random_partial(rng, inst);
    bool small = true;
    for (const auto& b : alloc.bundles()) {
      for (auto c : b.counts()) small = small && c <= 3;
    }
    const bool ef = check_ef(alloc).satisfied;
    const bool efx = check_efx(alloc).satisfied;
    const bool ef1 = check_ef1(alloc).satisfied;
    if (ef) CHECK(efx);
    if (efx) CHECK(ef1);
    if (small) CHECK(efx == efx_by_definition(alloc));
    // witnesses reproduce
    for (auto c : {Criterion::ef, Criterion::ef1, Criterion::efx}) {
      const auto r = check(alloc, c);
      if (!r.satisfied) {
        const auto& w = *r.witness;
        CHECK(alloc.own_value(w.observer) == w.own_value);
        CHECK(value(inst->valuation(w.observer), witness_bundle(alloc, w)) == w.other_value);
        CHECK(w.own_value < w.other_value);
      }
    }
  }
}

TEST_CASE("efx_after_giving matches give then check") {
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_instance(rng, 3, 2, 5, 5);
    const auto alloc = random_partial(rng, inst);
    for (TypeIndex a = 0; a < 2; ++a) {
      if (alloc.unallocated()[a] == 0) continue;
      for (AgentIndex i = 0; i < 3; ++i) {
        if (!check_efx(alloc).satisfied) continue;
        auto y = alloc;
        y.give(i, a);
        CHECK(efx_after_giving(alloc, i, a) == check_efx(y).satisfied);
      }
    }
  }
}

TEST_CASE("envy graph") {
  const auto inst = table_instance();
  const auto g = envy_graph(table_stuck(inst));
  CHECK(g.sources() == std::vector<AgentIndex>{A, B});
  CHECK(g.edges() == std::vector<std::pair<AgentIndex, AgentIndex>>{{B, C}});
  CHECK(find_source(g) == A);

  CHECK(envy_graph(Allocation(inst)).edges().empty());
  const Allocation y(inst, {ItemVector{4, 3, 2}, ItemVector{3, 3, 4}, ItemVector{2, 3, 5}});
  CHECK(envy_graph(y).edges().empty());
}

TEST_CASE("find source") {
  EnvyGraph none(3);
  CHECK(find_source(none) == 0);
  EnvyGraph g(3);
  g.add_edge(1, 0);
  g.add_edge(2, 0);
  CHECK(find_source(g) == 1);
  EnvyGraph cyc(2);
  cyc.add_edge(0, 1);
  cyc.add_edge(1, 0);
  CHECK_FALSE(cyc.acyclic());
  try {
    find_source(cyc);
    FAIL("expected precondition error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition_failed);
  }
}

TEST_CASE("find cycle picks the lowest vertex on a cycle") {
  EnvyGraph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  g.add_edge(3, 1);
  g.add_edge(1, 3);
  const auto c = g.find_cycle();
  REQUIRE(c);
  CHECK(*c == std::vector<AgentIndex>{1, 3});
}

TEST_CASE("decycle") {
  const auto inst = make_instance(ItemVector{1, 1}, {AdditiveValuation{1, 0}, AdditiveValuation{0, 1}});
  const Allocation crossed(inst, {ItemVector{0, 1}, ItemVector{1, 0}});
  const auto fixed = decycle(crossed);
  CHECK(fixed.bundle(0) == ItemVector{1, 0});
  CHECK(fixed.bundle(1) == ItemVector{0, 1});
  CHECK(fixed.own_value(0) == Rational(1));
  CHECK(pareto_dominates(fixed, crossed) == Dominance::strict);

  const auto tidy = table_stuck(table_instance());
  CHECK(decycle(tidy) == tidy);
}

TEST_CASE("decycle properties") {
  Rng rng(21);
  int efx_inputs = 0;
  for (int trial = 0; trial < 2000 && efx_inputs < 500; ++trial) {
    const auto inst = random_instance(rng, static_cast<std::size_t>(uniform(rng, 2, 4)), 2, 6, 6);
    const auto alloc = random_partial(rng, inst);
    const auto out = decycle(alloc);
    CHECK(envy_graph(out).acyclic());
    CHECK(pareto_dominates(out, alloc) != Dominance::none);
    CHECK(decycle(out) == out);
    auto before = std::vector<ItemVector>(alloc.bundles().begin(), alloc.bundles().end());
    auto after = std::vector<ItemVector>(out.bundles().begin(), out.bundles().end());
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    CHECK(before == after);
    for (AgentIndex i = 0; i < alloc.agents(); ++i) CHECK_FALSE(envy_graph(out).has_edge(i, i));
    if (check_efx(alloc).satisfied) {
      ++efx_inputs;
      CHECK(check_efx(out).satisfied);
    }
  }
  CHECK(efx_inputs == 500);
}
