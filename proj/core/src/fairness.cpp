#include "fairdiv/fairness.hpp"

#include <string>

#include "fairdiv/error.hpp"

namespace fairdiv {

std::string_view to_string(Criterion criterion) noexcept {
  switch (criterion) {
    case Criterion::ef: return "ef";
    case Criterion::ef1: return "ef1";
    case Criterion::efx: return "efx";
  }
  return "efx";
}

Criterion parse_criterion(std::string_view text) {
  if (text == "ef") return Criterion::ef;
  if (text == "ef1") return Criterion::ef1;
  if (text == "efx") return Criterion::efx;
  fail(ErrorCode::invalid_argument, "unknown criterion '" + std::string(text) + "'");
}

ItemVector witness_bundle(const Allocation& alloc, const Witness& witness) {
  const auto& bundle = alloc.bundle(witness.envied);
  return witness.removed_type ? remove_item(bundle, *witness.removed_type) : bundle;
}

bool envies(AgentIndex i, AgentIndex j, const Allocation& alloc) {
  if (i == j) fail(ErrorCode::invalid_argument, "an agent cannot envy itself");
  return alloc.own_value(i) < alloc.value_of(i, j);
}

namespace {

// Shared scan over ordered pairs (i, j), i != j, in lexicographic order.
template <typename PairCheck>
FairnessReport scan_pairs(const Allocation& alloc, Criterion criterion, PairCheck&& pair_check) {
  FairnessReport report{criterion, true, std::nullopt};
  const auto n = alloc.agents();
  for (AgentIndex i = 0; i < n; ++i) {
    const auto& v = alloc.instance().valuation(i);
    const Rational own = value(v, alloc.bundle(i));
    for (AgentIndex j = 0; j < n; ++j) {
      if (i == j) continue;
      const Rational other = value(v, alloc.bundle(j));
      if (other <= own) continue;
      if (auto witness = pair_check(i, j, v, own, other)) {
        report.satisfied = false;
        report.witness = std::move(witness);
        return report;
      }
    }
  }
  return report;
}

}  // namespace

FairnessReport check_ef(const Allocation& alloc) {
  return scan_pairs(alloc, Criterion::ef,
                    [](AgentIndex i, AgentIndex j, const AdditiveValuation&, const Rational& own,
                       const Rational& other) -> std::optional<Witness> {
                      return Witness{i, j, std::nullopt, own, other};
                    });
}

FairnessReport check_efx(const Allocation& alloc) {
  return scan_pairs(alloc, Criterion::efx,
                    [&](AgentIndex i, AgentIndex j, const AdditiveValuation& v, const Rational& own,
                        const Rational& other) -> std::optional<Witness> {
                      const auto& xj = alloc.bundle(j);
                      for (TypeIndex a = 0; a < xj.types(); ++a) {
                        if (xj[a] == 0) continue;
                        const Rational reduced = other - v[a];
                        if (own < reduced) return Witness{i, j, a, own, reduced};
                      }
                      return std::nullopt;
                    });
}

FairnessReport check_ef1(const Allocation& alloc) {
  return scan_pairs(alloc, Criterion::ef1,
                    [&](AgentIndex i, AgentIndex j, const AdditiveValuation& v, const Rational& own,
                        const Rational& other) -> std::optional<Witness> {
                      const auto& xj = alloc.bundle(j);
                      std::optional<TypeIndex> best;
                      for (TypeIndex a = 0; a < xj.types(); ++a) {
                        if (xj[a] == 0) continue;
                        if (!best || v[*best] < v[a]) best = a;
                      }
                      // other > own >= 0 means X_j holds at least one item.
                      const Rational reduced = other - v[*best];
                      if (own < reduced) return Witness{i, j, best, own, reduced};
                      return std::nullopt;
                    });
}

FairnessReport check(const Allocation& alloc, Criterion criterion) {
  switch (criterion) {
    case Criterion::ef: return check_ef(alloc);
    case Criterion::ef1: return check_ef1(alloc);
    case Criterion::efx: return check_efx(alloc);
  }
  return check_efx(alloc);
}

bool efx_after_giving(const Allocation& alloc, AgentIndex i, TypeIndex a) {
  if (alloc.unallocated().at(a) == 0) return false;
  Allocation next = alloc;
  next.give(i, a);
  return check_efx(next).satisfied;
}

void EnvyGraph::add_edge(AgentIndex from, AgentIndex to) {
  if (from >= n_ || to >= n_) fail(ErrorCode::index_out_of_range, "envy graph vertex out of range");
  if (from == to) fail(ErrorCode::invalid_argument, "envy graph has no self loops");
  adjacency_[from * n_ + to] = true;
}

std::size_t EnvyGraph::out_degree(AgentIndex v) const {
  std::size_t d = 0;
  for (AgentIndex w = 0; w < n_; ++w) d += has_edge(v, w);
  return d;
}

std::size_t EnvyGraph::in_degree(AgentIndex v) const {
  std::size_t d = 0;
  for (AgentIndex w = 0; w < n_; ++w) d += has_edge(w, v);
  return d;
}

std::vector<AgentIndex> EnvyGraph::successors(AgentIndex v) const {
  std::vector<AgentIndex> out;
  for (AgentIndex w = 0; w < n_; ++w) {
    if (has_edge(v, w)) out.push_back(w);
  }
  return out;
}

std::vector<AgentIndex> EnvyGraph::predecessors(AgentIndex v) const {
  std::vector<AgentIndex> out;
  for (AgentIndex w = 0; w < n_; ++w) {
    if (has_edge(w, v)) out.push_back(w);
  }
  return out;
}

std::vector<std::pair<AgentIndex, AgentIndex>> EnvyGraph::edges() const {
  std::vector<std::pair<AgentIndex, AgentIndex>> out;
  for (AgentIndex v = 0; v < n_; ++v) {
    for (AgentIndex w = 0; w < n_; ++w) {
      if (has_edge(v, w)) out.emplace_back(v, w);
    }
  }
  return out;
}

// Kahn's algorithm.
bool EnvyGraph::acyclic() const {
  std::vector<std::size_t> in(n_);
  std::vector<AgentIndex> stack;
  for (AgentIndex v = 0; v < n_; ++v) {
    in[v] = in_degree(v);
    if (in[v] == 0) stack.push_back(v);
  }
  std::size_t removed = 0;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    ++removed;
    for (AgentIndex w = 0; w < n_; ++w) {
      if (has_edge(v, w) && --in[w] == 0) stack.push_back(w);
    }
  }
  return removed == n_;
}

std::vector<AgentIndex> EnvyGraph::sources() const {
  std::vector<AgentIndex> out;
  for (AgentIndex v = 0; v < n_; ++v) {
    if (in_degree(v) == 0) out.push_back(v);
  }
  return out;
}

std::vector<bool> EnvyGraph::reachable_from(AgentIndex v) const {
  std::vector<bool> seen(n_, false);
  std::vector<AgentIndex> stack{v};
  seen[v] = true;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (AgentIndex w = 0; w < n_; ++w) {
      if (has_edge(u, w) && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

std::optional<std::vector<AgentIndex>> EnvyGraph::find_cycle() const {
  for (AgentIndex root = 0; root < n_; ++root) {
    // Iterative DFS from root looking for an edge back into root.
    std::vector<bool> seen(n_, false);
    std::vector<AgentIndex> path{root};
    std::vector<AgentIndex> next_child{0};
    seen[root] = true;
    while (!path.empty()) {
      const auto u = path.back();
      auto& child = next_child.back();
      bool descended = false;
      while (child < n_) {
        const auto w = child++;
        if (!has_edge(u, w)) continue;
        if (w == root) return path;
        if (!seen[w]) {
          seen[w] = true;
          path.push_back(w);
          next_child.push_back(0);
          descended = true;
          break;
        }
      }
      if (!descended) {
        path.pop_back();
        next_child.pop_back();
      }
    }
  }
  return std::nullopt;
}

EnvyGraph envy_graph(const Allocation& alloc) {
  const auto n = alloc.agents();
  EnvyGraph g(n);
  for (AgentIndex i = 0; i < n; ++i) {
    const auto& v = alloc.instance().valuation(i);
    const Rational own = value(v, alloc.bundle(i));
    for (AgentIndex j = 0; j < n; ++j) {
      if (i != j && own < value(v, alloc.bundle(j))) g.add_edge(i, j);
    }
  }
  return g;
}

Allocation decycle(const Allocation& alloc) {
  Allocation out = alloc;
  while (auto cycle = envy_graph(out).find_cycle()) {
    const auto& c = *cycle;
    std::vector<ItemVector> rotated;
    rotated.reserve(c.size());
    for (std::size_t p = 0; p < c.size(); ++p) rotated.push_back(out.bundle(c[(p + 1) % c.size()]));
    std::vector<ItemVector> bundles(out.bundles().begin(), out.bundles().end());
    for (std::size_t p = 0; p < c.size(); ++p) bundles[c[p]] = std::move(rotated[p]);
    out = Allocation(out.instance_ptr(), std::move(bundles));
  }
  return out;
}

AgentIndex find_source(const EnvyGraph& g) {
  if (!g.acyclic()) fail(ErrorCode::precondition_failed, "find_source requires an acyclic envy graph");
  for (AgentIndex v = 0; v < g.size(); ++v) {
    if (g.in_degree(v) == 0) return v;
  }
  fail(ErrorCode::invariant_violated, "acyclic graph without a source");
}

}  // namespace fairdiv
