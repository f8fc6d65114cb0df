#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "fairdiv/model.hpp"

namespace fairdiv {

enum class Criterion { ef, ef1, efx };

std::string_view to_string(Criterion criterion) noexcept;
Criterion parse_criterion(std::string_view text);

// A violated pair. For EF the removed type is empty; for EFX it is the first
// type whose removal leaves the envy in place; for EF1 it is the observer's
// most valued type present in the envied bundle (the best removal still fails).
struct Witness {
  AgentIndex observer = 0;
  AgentIndex envied = 0;
  std::optional<TypeIndex> removed_type;
  Rational own_value;
  Rational other_value;  // V_observer of the envied bundle after the removal

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct FairnessReport {
  Criterion criterion = Criterion::efx;
  bool satisfied = true;
  std::optional<Witness> witness;
};

// The offending bundle a witness refers to, i.e. X_envied minus the removed item.
ItemVector witness_bundle(const Allocation& alloc, const Witness& witness);

// V_i(X_i) < V_i(X_j). Throws invalid_argument when i == j.
bool envies(AgentIndex i, AgentIndex j, const Allocation& alloc);

FairnessReport check_ef(const Allocation& alloc);
FairnessReport check_ef1(const Allocation& alloc);
FairnessReport check_efx(const Allocation& alloc);
FairnessReport check(const Allocation& alloc, Criterion criterion);

// True iff giving one item of type a to agent i keeps the allocation EFX.
bool efx_after_giving(const Allocation& alloc, AgentIndex i, TypeIndex a);

class EnvyGraph {
 public:
  explicit EnvyGraph(std::size_t n) : n_(n), adjacency_(n * n, false) {}

  std::size_t size() const noexcept { return n_; }
  void add_edge(AgentIndex from, AgentIndex to);
  bool has_edge(AgentIndex from, AgentIndex to) const { return adjacency_[from * n_ + to]; }

  std::size_t out_degree(AgentIndex v) const;
  std::size_t in_degree(AgentIndex v) const;
  std::vector<AgentIndex> successors(AgentIndex v) const;
  std::vector<AgentIndex> predecessors(AgentIndex v) const;
  std::vector<std::pair<AgentIndex, AgentIndex>> edges() const;

  bool acyclic() const;
  std::vector<AgentIndex> sources() const;
  // Vertices reachable from v by a directed path (v included).
  std::vector<bool> reachable_from(AgentIndex v) const;

  // The cycle through the lowest-index vertex that lies on any cycle, found
  // by depth-first search with successors taken in ascending order.
  // Returned as v_0 -> v_1 -> ... -> v_{k-1} -> v_0.
  std::optional<std::vector<AgentIndex>> find_cycle() const;

 private:
  std::size_t n_;
  std::vector<bool> adjacency_;
};

EnvyGraph envy_graph(const Allocation& alloc);

// Rotates bundles along envy cycles until the envy graph is acyclic.
// Every agent ends up weakly better off; agents on a rotated cycle strictly.
Allocation decycle(const Allocation& alloc);

// Lowest-index vertex with in-degree zero. Throws precondition_failed on a
// cyclic graph.
AgentIndex find_source(const EnvyGraph& g);

}  // namespace fairdiv
