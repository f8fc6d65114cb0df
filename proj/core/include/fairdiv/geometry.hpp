#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/model.hpp"

namespace fairdiv {

enum class Dominance { strict, weak, none };

std::string_view to_string(Dominance d) noexcept;

// Componentwise comparison of V_i(Y_i) against V_i(X_i).
Dominance pareto_dominates(const Allocation& y, const Allocation& x);

// A rational or +infinity. Infinities compare equal to each other and above
// every finite value.
struct Extended {
  std::optional<Rational> finite;

  static Extended infinity() { return Extended{}; }
  bool is_infinite() const { return !finite.has_value(); }
  std::string str() const { return finite ? finite->str() : "inf"; }

  friend bool operator==(const Extended&, const Extended&) = default;
  friend std::strong_ordering operator<=>(const Extended& lhs, const Extended& rhs) {
    if (lhs.is_infinite() || rhs.is_infinite()) return lhs.is_infinite() <=> rhs.is_infinite();
    return *lhs.finite <=> *rhs.finite;
  }
};

// Per-agent hyperplane data: intercept[i][a] = V_i(x_i) / v_i(a), +inf when v_i(a) = 0.
struct GeometricState {
  std::vector<std::vector<Extended>> intercept;

  // y lies strictly above the hyperplane of agent i, i.e. i envies y.
  static bool above(const Allocation& alloc, AgentIndex i, const ItemVector& y);
};

GeometricState geometric_state(const Allocation& alloc);

struct MeaResult {
  AgentIndex agent = 0;
  ItemVector bundle;  // Z
  // Envy path from the source to the agent: path.front() = s, path.back() = agent.
  std::vector<AgentIndex> path;
};

// True iff some agent strictly prefers y to their own bundle.
bool envied_by_anyone(const Allocation& alloc, const ItemVector& y);
// True iff no agent envies any strict subset of z.
bool no_strict_subset_envied(const Allocation& alloc, const ItemVector& z);

// Scans strict sub-multisets of `bundle` by ascending size, ties
// lexicographic, and returns the first Z envied by some agent together with
// the lowest-index agent envying it. Such a Z is minimal: nothing smaller is
// envied. Path is left empty.
std::optional<MeaResult> most_envious_agent(const Allocation& alloc, const ItemVector& bundle);

// Z if `agent` is a most envious agent of `bundle`: agent envies Z, Z is a
// strict subset of bundle, and no agent envies a strict subset of Z. Same scan
// order as most_envious_agent.
std::optional<ItemVector> mea_witness(const Allocation& alloc, const ItemVector& bundle, AgentIndex agent);

// Two-type construction of a most envious agent of X_s + g reachable from the
// source s with the least intercept on the g axis. Requires t = 2, an acyclic
// envy graph and an unallocated item of g_type. When giving g straight to s
// keeps EFX, returns the trivial result (s, X_s + g, [s]).
std::optional<MeaResult> reachable_mea_t2(const Allocation& alloc, TypeIndex g_type);

// Moves bundles one step along the path toward the source and hands Z to the
// agent at its end; items of X_s + g outside Z return to the pool.
Allocation apply_shift(const Allocation& alloc, const MeaResult& mea, TypeIndex g_type);

struct GeometricRunStats {
  std::int64_t direct_gives = 0;
  std::int64_t decycles = 0;
  std::int64_t shifts = 0;
  std::int64_t shift_violations = 0;  // shifts that broke EFX or strict dominance
};

Allocation allocate_two_types_geometric(const InstancePtr& instance, const AlgorithmOptions& options = {},
                                        GeometricRunStats* stats = nullptr);

struct CounterexampleFixture {
  Rational epsilon;
  std::vector<ItemVector> stuck;     // EFX partial allocation with one g left
  std::vector<ItemVector> complete;  // the complete EF allocation
  TypeIndex g_type = 1;

  static CounterexampleFixture standard();
  InstancePtr instance() const;
};

struct CounterexampleCheck {
  int group = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CounterexampleReport {
  std::vector<CounterexampleCheck> checks;
  bool passed() const;
  bool group_passed(int group) const;
};

// Three agents A, B, C and three types; a stuck EFX allocation with no
// reachable most envious agent for any source.
CounterexampleReport counterexample_t3(const CounterexampleFixture& fixture = CounterexampleFixture::standard());

}  // namespace fairdiv
