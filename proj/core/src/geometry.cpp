#include "fairdiv/geometry.hpp"

#include <algorithm>
#include <sstream>

#include "fairdiv/error.hpp"
#include "fairdiv/fairness.hpp"

namespace fairdiv {

std::string_view to_string(Dominance d) noexcept {
  switch (d) {
    case Dominance::strict: return "strict";
    case Dominance::weak: return "weak";
    case Dominance::none: return "no";
  }
  return "no";
}

Dominance pareto_dominates(const Allocation& y, const Allocation& x) {
  if (!(y.instance() == x.instance())) fail(ErrorCode::invalid_argument, "allocations belong to different instances");
  bool strict = false;
  for (AgentIndex i = 0; i < x.agents(); ++i) {
    const auto cmp = y.own_value(i) <=> x.own_value(i);
    if (cmp < 0) return Dominance::none;
    if (cmp > 0) strict = true;
  }
  return strict ? Dominance::strict : Dominance::weak;
}

bool GeometricState::above(const Allocation& alloc, AgentIndex i, const ItemVector& y) {
  const auto& v = alloc.instance().valuation(i);
  return value(v, alloc.bundle(i)) < value(v, y);
}

GeometricState geometric_state(const Allocation& alloc) {
  GeometricState state;
  const auto t = alloc.instance().types();
  for (AgentIndex i = 0; i < alloc.agents(); ++i) {
    const auto& v = alloc.instance().valuation(i);
    const Rational own = value(v, alloc.bundle(i));
    std::vector<Extended> row;
    row.reserve(t);
    for (TypeIndex a = 0; a < t; ++a) {
      row.push_back(v[a].sign() > 0 ? Extended{own / v[a]} : Extended::infinity());
    }
    state.intercept.push_back(std::move(row));
  }
  return state;
}

bool envied_by_anyone(const Allocation& alloc, const ItemVector& y) {
  for (AgentIndex i = 0; i < alloc.agents(); ++i) {
    if (GeometricState::above(alloc, i, y)) return true;
  }
  return false;
}

bool no_strict_subset_envied(const Allocation& alloc, const ItemVector& z) {
  // Values are monotone, so only the maximal strict subsets z - e_a matter.
  for (TypeIndex a = 0; a < z.types(); ++a) {
    if (z[a] > 0 && envied_by_anyone(alloc, remove_item(z, a))) return false;
  }
  return true;
}

namespace {

std::vector<ItemVector> subsets_by_size(const ItemVector& bundle) {
  std::vector<ItemVector> out(strict_subsets(bundle).begin(), strict_subsets(bundle).end());
  std::stable_sort(out.begin(), out.end(), [](const ItemVector& lhs, const ItemVector& rhs) {
    if (lhs.total() != rhs.total()) return lhs.total() < rhs.total();
    return lhs < rhs;
  });
  return out;
}

std::string bundle_str(const ItemVector& x) {
  std::string s = "(";
  for (TypeIndex a = 0; a < x.types(); ++a) {
    if (a > 0) s += ",";
    s += std::to_string(x[a]);
  }
  return s + ")";
}

// Lowest index among `candidates` minimizing key, except that `preferred`
// wins any tie it is part of.
template <typename Key>
std::optional<AgentIndex> argmin_prefer(const std::vector<AgentIndex>& candidates, AgentIndex preferred, Key&& key) {
  std::optional<AgentIndex> best;
  for (auto i : candidates) {
    if (!best || key(i) < key(*best)) {
      best = i;
    } else if (i == preferred && key(i) == key(*best)) {
      best = i;
    }
  }
  return best;
}

void validate_mea(const Allocation& alloc, const MeaResult& mea, TypeIndex g_type, bool trivial) {
  const auto s = mea.path.front();
  const auto grown = add_item(alloc.bundle(s), g_type);
  const auto g = envy_graph(alloc);
  // The trivial give only has to keep EFX; s may well value part of its own grown bundle.
  bool ok = trivial ? mea.bundle == grown && efx_after_giving(alloc, s, g_type)
                    : mea.bundle.strict_subset_of(grown) && GeometricState::above(alloc, mea.agent, mea.bundle) &&
                          no_strict_subset_envied(alloc, mea.bundle);
  ok = ok && mea.path.back() == mea.agent;
  for (std::size_t k = 0; ok && k + 1 < mea.path.size(); ++k) ok = g.has_edge(mea.path[k], mea.path[k + 1]);
  if (!ok) {
    fail(ErrorCode::invariant_violated, "reachable MEA construction produced an invalid result: agent " +
                                            std::to_string(mea.agent) + ", bundle " + bundle_str(mea.bundle));
  }
}

}  // namespace

std::optional<MeaResult> most_envious_agent(const Allocation& alloc, const ItemVector& bundle) {
  for (const auto& z : subsets_by_size(bundle)) {
    for (AgentIndex i = 0; i < alloc.agents(); ++i) {
      if (GeometricState::above(alloc, i, z)) return MeaResult{i, z, {}};
    }
  }
  return std::nullopt;
}

std::optional<ItemVector> mea_witness(const Allocation& alloc, const ItemVector& bundle, AgentIndex agent) {
  if (agent >= alloc.agents()) fail(ErrorCode::index_out_of_range, "agent index out of range");
  for (const auto& z : subsets_by_size(bundle)) {
    if (GeometricState::above(alloc, agent, z) && no_strict_subset_envied(alloc, z)) return z;
  }
  return std::nullopt;
}

std::optional<MeaResult> reachable_mea_t2(const Allocation& alloc, TypeIndex g_type) {
  const auto& inst = alloc.instance();
  if (inst.types() != 2) fail(ErrorCode::precondition_failed, "reachable MEA construction needs exactly two types");
  if (g_type >= 2) fail(ErrorCode::index_out_of_range, "item type out of range");
  if (alloc.unallocated()[g_type] == 0) {
    fail(ErrorCode::precondition_failed, "no unallocated item of type " + std::to_string(g_type));
  }
  const auto graph = envy_graph(alloc);
  if (!graph.acyclic()) fail(ErrorCode::precondition_failed, "envy graph has a cycle");

  const TypeIndex a = g_type;
  const TypeIndex o = 1 - g_type;
  const auto n = alloc.agents();
  const auto state = geometric_state(alloc);

  const auto sources = graph.sources();
  const AgentIndex s =
      *argmin_prefer(sources, sources.front(), [&](AgentIndex i) { return state.intercept[i][a]; });

  if (efx_after_giving(alloc, s, a)) {
    MeaResult trivial{s, add_item(alloc.bundle(s), a), {s}};
    validate_mea(alloc, trivial, g_type, true);
    return trivial;
  }

  const std::int64_t height = alloc.bundle(s)[a] + 1;
  std::vector<AgentIndex> all(n);
  for (AgentIndex i = 0; i < n; ++i) all[i] = i;

  std::vector<AgentIndex> below;  // N_s
  for (AgentIndex i = 0; i < n; ++i) {
    if (state.intercept[i][a] < Extended{Rational(height)}) below.push_back(i);
  }

  MeaResult mea;
  std::vector<std::int64_t> z(2, 0);
  z[a] = height;
  if (!below.empty()) {
    mea.agent = *argmin_prefer(below, s, [&](AgentIndex i) { return state.intercept[i][a]; });
  } else {
    // Where each agent's indifference line crosses the horizontal line through q_s.
    std::vector<Extended> cross(n);
    for (AgentIndex i = 0; i < n; ++i) {
      const auto& v = inst.valuation(i);
      if (v[o].sign() > 0) cross[i] = Extended{(value(v, alloc.bundle(i)) - v[a] * Rational(height)) / v[o]};
    }
    mea.agent = *argmin_prefer(all, s, [&](AgentIndex i) { return cross[i]; });
    if (cross[mea.agent].is_infinite()) {
      fail(ErrorCode::invariant_violated, "no agent line crosses the line through q_s");
    }
    z[o] = cross[mea.agent].finite->floor() + 1;
  }
  mea.bundle = ItemVector(std::move(z));

  // Walk back from r along envy edges until s envies the current agent.
  std::vector<AgentIndex> rev{mea.agent};
  std::vector<bool> on_path(n, false);
  on_path[mea.agent] = true;
  AgentIndex cur = mea.agent;
  while (cur != s) {
    if (graph.has_edge(s, cur)) {
      rev.push_back(s);
      break;
    }
    std::optional<AgentIndex> next;
    for (auto p : graph.predecessors(cur)) {
      if (!on_path[p]) {
        next = p;
        break;
      }
    }
    if (!next) fail(ErrorCode::invariant_violated, "agent " + std::to_string(cur) + " has no envious predecessor");
    on_path[*next] = true;
    rev.push_back(*next);
    cur = *next;
  }
  mea.path.assign(rev.rbegin(), rev.rend());
  validate_mea(alloc, mea, g_type, false);
  return mea;
}

Allocation apply_shift(const Allocation& alloc, const MeaResult& mea, TypeIndex g_type) {
  const auto n = alloc.agents();
  if (g_type >= alloc.instance().types()) fail(ErrorCode::index_out_of_range, "item type out of range");
  if (mea.path.empty() || mea.path.back() != mea.agent) {
    fail(ErrorCode::invariant_violated, "shift path must end at the MEA agent");
  }
  for (auto i : mea.path) {
    if (i >= n) fail(ErrorCode::invariant_violated, "shift path names an unknown agent");
  }
  if (alloc.unallocated()[g_type] == 0) fail(ErrorCode::invariant_violated, "no unallocated item to shift in");
  const auto s = mea.path.front();
  if (!mea.bundle.subset_of(add_item(alloc.bundle(s), g_type))) {
    fail(ErrorCode::invariant_violated, "shift bundle is not contained in X_s + g");
  }
  const auto graph = envy_graph(alloc);
  for (std::size_t k = 0; k + 1 < mea.path.size(); ++k) {
    if (!graph.has_edge(mea.path[k], mea.path[k + 1])) {
      fail(ErrorCode::invariant_violated, "shift path uses a missing envy edge");
    }
  }
  std::vector<ItemVector> bundles(alloc.bundles().begin(), alloc.bundles().end());
  for (std::size_t k = 0; k + 1 < mea.path.size(); ++k) bundles[mea.path[k]] = alloc.bundle(mea.path[k + 1]);
  bundles[mea.agent] = mea.bundle;
  return Allocation(alloc.instance_ptr(), std::move(bundles));
}

Allocation allocate_two_types_geometric(const InstancePtr& instance, const AlgorithmOptions& options,
                                        GeometricRunStats* stats) {
  if (instance->types() != 2) fail(ErrorCode::unsupported_instance, "geometric allocator needs exactly two types");
  GeometricRunStats local;
  auto& st = stats ? *stats : local;
  Allocation alloc(instance);
  while (!alloc.complete()) {
    const auto pool = alloc.unallocated();
    TypeIndex a = 0;
    while (pool[a] == 0) ++a;

    bool given = false;
    for (AgentIndex i = 0; i < alloc.agents() && !given; ++i) {
      if (efx_after_giving(alloc, i, a)) {
        alloc.give(i, a);
        ++st.direct_gives;
        given = true;
      }
    }
    if (given) continue;

    if (!envy_graph(alloc).acyclic()) {
      alloc = decycle(alloc);
      ++st.decycles;
      continue;
    }

    auto mea = reachable_mea_t2(alloc, a);
    if (!mea) fail(ErrorCode::invariant_violated, "no reachable MEA for a two-type allocation");
    auto next = apply_shift(alloc, *mea, a);
    ++st.shifts;
    if (!check_efx(next).satisfied || pareto_dominates(next, alloc) != Dominance::strict) {
      ++st.shift_violations;
      if (options.stepwise_checks) fail(ErrorCode::invariant_violated, "shift lost EFX or Pareto improvement");
    }
    alloc = std::move(next);
  }
  return alloc;
}

CounterexampleFixture CounterexampleFixture::standard() {
  CounterexampleFixture f;
  f.epsilon = Rational(7, 100);
  f.stuck = {ItemVector{3, 5, 0}, ItemVector{6, 3, 0}, ItemVector{0, 0, 11}};
  f.complete = {ItemVector{4, 3, 2}, ItemVector{3, 3, 4}, ItemVector{2, 3, 5}};
  f.g_type = 1;
  return f;
}

InstancePtr CounterexampleFixture::instance() const {
  const Rational e = epsilon;
  std::vector<AdditiveValuation> v{
      AdditiveValuation{Rational(1), Rational(2) - e, Rational(0)},
      AdditiveValuation{Rational(1) + Rational(2) * e, Rational(1) + e, Rational(1)},
      AdditiveValuation{Rational(0), Rational(2) - e, Rational(1)},
  };
  return make_instance(ItemVector{9, 9, 11}, std::move(v));
}

bool CounterexampleReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

bool CounterexampleReport::group_passed(int group) const {
  bool any = false;
  for (const auto& c : checks) {
    if (c.group != group) continue;
    any = true;
    if (!c.passed) return false;
  }
  return any;
}

CounterexampleReport counterexample_t3(const CounterexampleFixture& fixture) {
  CounterexampleReport report;
  auto add = [&](int group, std::string name, bool passed, std::string detail = {}) {
    report.checks.push_back({group, std::move(name), passed, std::move(detail)});
  };
  static const char* names[] = {"A", "B", "C"};
  enum : AgentIndex { A = 0, B = 1, C = 2 };

  InstancePtr inst;
  try {
    inst = fixture.instance();
  } catch (const Error& e) {
    add(0, "fixture instance is valid", false, e.what());
    return report;
  }
  std::optional<Allocation> x;
  try {
    x.emplace(inst, fixture.stuck);
  } catch (const Error& e) {
    add(1, "stuck allocation fits the supply", false, e.what());
    return report;
  }
  const auto g = fixture.g_type;

  // 1
  {
    const auto r = check_efx(*x);
    std::string detail;
    if (r.witness) {
      detail = std::string(names[r.witness->observer]) + " envies " + bundle_str(witness_bundle(*x, *r.witness)) +
               " from " + names[r.witness->envied];
    }
    add(1, "X is EFX", r.satisfied, detail);
    const auto pool = x->unallocated();
    add(1, "exactly one item of type 2 is unallocated", pool.total() == 1 && pool[g] == 1, bundle_str(pool));
  }

  // 2
  const auto graph = envy_graph(*x);
  {
    const auto src = graph.sources();
    std::string detail;
    for (auto i : src) detail += names[i];
    add(2, "sources are exactly {A, B}", src == std::vector<AgentIndex>{A, B}, "sources: " + detail);
  }

  // 3
  struct Breach {
    AgentIndex receiver, observer;
    ItemVector bundle;
  };
  const Breach breaches[] = {{A, C, ItemVector{2, 6, 0}}, {B, A, ItemVector{5, 4, 0}}, {C, B, ItemVector{0, 0, 11}}};
  for (const auto& b : breaches) {
    auto y = *x;
    y.give(b.receiver, g);
    const auto r = check_efx(y);
    const bool matches = !r.satisfied && r.witness->observer == b.observer && r.witness->envied == b.receiver &&
                         witness_bundle(y, *r.witness) == b.bundle;
    std::string detail = r.witness ? std::string(names[r.witness->observer]) + " envies " +
                                         bundle_str(witness_bundle(y, *r.witness))
                                   : std::string("EFX holds");
    add(3,
        std::string("giving g to ") + names[b.receiver] + " breaks EFX: " + names[b.observer] + " envies " +
            bundle_str(b.bundle),
        matches, detail);
  }

  // 4
  struct Identity {
    AgentIndex source, mea;
    ItemVector z;
  };
  const Identity identities[] = {
      {A, C, ItemVector{0, 6, 0}}, {B, A, ItemVector{5, 4, 0}}, {C, B, ItemVector{0, 1, 9}}};
  for (const auto& id : identities) {
    const auto grown = add_item(x->bundle(id.source), g);
    const auto found = most_envious_agent(*x, grown);
    const bool ok = found && found->agent == id.mea && found->bundle == id.z;
    std::string detail =
        found ? std::string(names[found->agent]) + " with " + bundle_str(found->bundle) : std::string("none");
    add(4,
        std::string("MEA of X_") + names[id.source] + " + g is " + names[id.mea] + " with z = " + bundle_str(id.z),
        ok, detail);
    for (AgentIndex k = 0; k < 3; ++k) {
      if (k == id.mea) continue;
      const auto w = mea_witness(*x, grown, k);
      add(4, std::string(names[k]) + " is not a MEA of X_" + names[id.source] + " + g", !w,
          w ? "witness " + bundle_str(*w) : std::string());
    }
  }

  // 5
  for (AgentIndex s = 0; s < 3; ++s) {
    const auto grown = add_item(x->bundle(s), g);
    const auto reach = graph.reachable_from(s);
    std::string detail;
    bool none = true;
    for (AgentIndex k = 0; k < 3; ++k) {
      if (reach[k] && mea_witness(*x, grown, k)) {
        none = false;
        detail += names[k];
      }
    }
    add(5, std::string("no reachable MEA from ") + names[s], none, detail.empty() ? detail : "reachable: " + detail);
  }

  // 6
  try {
    const Allocation y(inst, fixture.complete);
    add(6, "Y is complete", y.complete(), bundle_str(y.unallocated()) + " unallocated");
    add(6, "Y is EF", check_ef(y).satisfied);
  } catch (const Error& e) {
    add(6, "Y fits the supply", false, e.what());
  }
  return report;
}

}  // namespace fairdiv
