#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fairdiv/model.hpp"

namespace fairdiv::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Integer values in [0, hi], at least one positive.
inline AdditiveValuation random_valuation(Rng& rng, std::size_t t, std::int64_t hi) {
  std::vector<Rational> v(t);
  bool positive = false;
  for (auto& x : v) {
    x = Rational(uniform(rng, 0, hi));
    positive = positive || x.sign() > 0;
  }
  if (!positive) v[uniform(rng, 0, static_cast<std::int64_t>(t) - 1)] = Rational(uniform(rng, 1, hi));
  return AdditiveValuation(std::move(v));
}

// Values p/q with 1 <= p <= num_hi, 1 <= q <= den_hi, occasionally zero.
inline AdditiveValuation random_rational_valuation(Rng& rng, std::size_t t, std::int64_t num_hi, std::int64_t den_hi) {
  std::vector<Rational> v(t);
  for (auto& x : v) {
    x = uniform(rng, 0, 9) == 0 ? Rational(0) : Rational(uniform(rng, 1, num_hi), uniform(rng, 1, den_hi));
  }
  bool positive = false;
  for (const auto& x : v) positive = positive || x.sign() > 0;
  if (!positive) v[0] = Rational(1);
  return AdditiveValuation(std::move(v));
}

inline ItemVector random_supply(Rng& rng, std::size_t t, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> m(t);
  for (auto& x : m) x = uniform(rng, lo, hi);
  return ItemVector(std::move(m));
}

inline InstancePtr random_instance(Rng& rng, std::size_t n, std::size_t t, std::int64_t m_hi, std::int64_t v_hi) {
  std::vector<AdditiveValuation> vals;
  for (std::size_t i = 0; i < n; ++i) vals.push_back(random_valuation(rng, t, v_hi));
  return make_instance(random_supply(rng, t, 0, m_hi), std::move(vals));
}

// A complete allocation drawn by throwing each item at a random agent.
inline Allocation random_complete(Rng& rng, const InstancePtr& inst) {
  Allocation alloc(inst);
  const auto n = static_cast<std::int64_t>(inst->agents());
  for (TypeIndex a = 0; a < inst->types(); ++a) {
    for (std::int64_t k = 0; k < inst->supply()[a]; ++k) alloc.give(static_cast<AgentIndex>(uniform(rng, 0, n - 1)), a);
  }
  return alloc;
}

// Each item lands with some agent or stays in the pool.
inline Allocation random_partial(Rng& rng, const InstancePtr& inst) {
  Allocation alloc(inst);
  const auto n = static_cast<std::int64_t>(inst->agents());
  for (TypeIndex a = 0; a < inst->types(); ++a) {
    for (std::int64_t k = 0; k < inst->supply()[a]; ++k) {
      const auto who = uniform(rng, -1, n - 1);
      if (who >= 0) alloc.give(static_cast<AgentIndex>(who), a);
    }
  }
  return alloc;
}

// The two agents of the opening example, each valuing three single items at 10, 4, 5.
inline InstancePtr intro_instance() {
  return make_instance(ItemVector{1, 1, 1}, {AdditiveValuation{10, 4, 5}, AdditiveValuation{10, 4, 5}});
}

inline InstancePtr table_instance(Rational eps = Rational(7, 100)) {
  return make_instance(ItemVector{9, 9, 11}, {AdditiveValuation{Rational(1), Rational(2) - eps, Rational(0)},
                                              AdditiveValuation{Rational(1) + Rational(2) * eps, Rational(1) + eps,
                                                                Rational(1)},
                                              AdditiveValuation{Rational(0), Rational(2) - eps, Rational(1)}});
}

inline Allocation table_stuck(const InstancePtr& inst) {
  return Allocation(inst, {ItemVector{3, 5, 0}, ItemVector{6, 3, 0}, ItemVector{0, 0, 11}});
}

}  // namespace fairdiv::testing
