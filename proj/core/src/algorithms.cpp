#include "fairdiv/algorithms.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "fairdiv/error.hpp"
#include "fairdiv/fairness.hpp"

namespace fairdiv {

bool PreferenceOrder::valid_for(const AdditiveValuation& v) const {
  if (v.types() != rank.size()) return false;
  for (TypeIndex a = 0; a < rank.size(); ++a) {
    for (TypeIndex b = 0; b < rank.size(); ++b) {
      if (v[a] > v[b] && rank[a] <= rank[b]) return false;
    }
  }
  return true;
}

std::vector<TypeIndex> PreferenceOrder::types_by_preference() const {
  std::vector<TypeIndex> types(rank.size());
  std::iota(types.begin(), types.end(), TypeIndex{0});
  std::sort(types.begin(), types.end(), [&](TypeIndex a, TypeIndex b) { return rank[a] > rank[b]; });
  return types;
}

std::optional<PreferenceOrder> common_preference_order(const Instance& instance) {
  const auto t = instance.types();
  // Edge a -> b when some agent strictly prefers a to b.
  std::vector<std::vector<bool>> prefers(t, std::vector<bool>(t, false));
  for (const auto& v : instance.valuations()) {
    for (TypeIndex a = 0; a < t; ++a) {
      for (TypeIndex b = 0; b < t; ++b) {
        if (v[a] > v[b]) prefers[a][b] = true;
      }
    }
  }
  std::vector<std::size_t> in(t, 0);
  for (TypeIndex a = 0; a < t; ++a) {
    for (TypeIndex b = 0; b < t; ++b) in[b] += prefers[a][b];
  }
  std::priority_queue<TypeIndex, std::vector<TypeIndex>, std::greater<>> ready;
  for (TypeIndex a = 0; a < t; ++a) {
    if (in[a] == 0) ready.push(a);
  }
  PreferenceOrder order{std::vector<std::size_t>(t, 0)};
  std::size_t position = 0;
  while (!ready.empty()) {
    const auto a = ready.top();
    ready.pop();
    order.rank[a] = t - 1 - position++;
    for (TypeIndex b = 0; b < t; ++b) {
      if (prefers[a][b] && --in[b] == 0) ready.push(b);
    }
  }
  if (position != t) return std::nullopt;
  return order;
}

Allocation allocate_single_type(const InstancePtr& instance) {
  if (instance->types() != 1) {
    fail(ErrorCode::precondition_failed, "single-type allocation needs t = 1, got t = " +
                                             std::to_string(instance->types()));
  }
  const auto n = static_cast<std::int64_t>(instance->agents());
  const auto m = instance->supply()[0];
  const auto base = m / n;
  const auto remainder = m - n * base;
  std::vector<ItemVector> bundles;
  bundles.reserve(instance->agents());
  for (std::int64_t i = 0; i < n; ++i) bundles.push_back(ItemVector{base + (i < remainder ? 1 : 0)});
  return Allocation(instance, std::move(bundles));
}

namespace {

void require_efx(const Allocation& alloc, const std::string& where) {
  const auto report = check_efx(alloc);
  if (!report.satisfied) {
    const auto& w = *report.witness;
    fail(ErrorCode::invariant_violated, where + ": allocation is not EFX (agent " + std::to_string(w.observer) +
                                            " vs agent " + std::to_string(w.envied) + ")");
  }
}

}  // namespace

Allocation allocate_identical_prefs(const InstancePtr& instance, const AlgorithmOptions& options) {
  const auto order = common_preference_order(*instance);
  if (!order) fail(ErrorCode::precondition_failed, "agents do not share a valid preference order");
  const auto preferred = order->types_by_preference();

  Allocation alloc(instance);
  ItemVector left = instance->supply();
  while (!left.empty()) {
    alloc = decycle(alloc);
    const auto source = find_source(envy_graph(alloc));
    const auto a = *std::find_if(preferred.begin(), preferred.end(), [&](TypeIndex b) { return left[b] > 0; });
    alloc.give(source, a);
    left = remove_item(left, a);
    if (options.stepwise_checks) require_efx(alloc, "identical-preferences placement");
  }
  return alloc;
}

std::string_view to_string(Step3End end) noexcept {
  switch (end) {
    case Step3End::not_run: return "not_run";
    case Step3End::envy: return "envy";
    case Step3End::exhausted: return "exhausted";
  }
  return "not_run";
}

TwoTypeResult allocate_two_types(const InstancePtr& instance, const AlgorithmOptions& options) {
  if (instance->types() != 2) {
    fail(ErrorCode::precondition_failed, "two-type allocation needs t = 2, got t = " +
                                             std::to_string(instance->types()));
  }
  const auto n = instance->agents();
  auto v = [&](AgentIndex i) -> const AdditiveValuation& { return instance->valuation(i); };

  Allocation alloc(instance);
  TwoTypeTrace trace;
  std::int64_t u[2] = {instance->supply()[0], instance->supply()[1]};
  auto give = [&](AgentIndex i, TypeIndex a) {
    alloc.give(i, a);
    --u[a];
  };
  auto checkpoint = [&](int step) {
    trace.steps_run = step;
    if (options.stepwise_checks) require_efx(alloc, "two-type step " + std::to_string(step));
  };

  // Step 1: round-robin of favourite items. Ties count as preferring type 1.
  std::vector<bool> prefers_first(n);
  std::int64_t group[2] = {0, 0};
  for (AgentIndex i = 0; i < n; ++i) {
    prefers_first[i] = v(i)[0] > v(i)[1];
    ++group[prefers_first[i] ? 0 : 1];
  }
  while (u[0] >= group[0] && u[1] >= group[1]) {
    for (AgentIndex i = 0; i < n; ++i) give(i, prefers_first[i] ? 0 : 1);
    ++trace.p;
  }
  checkpoint(1);
  if (u[0] == 0 && u[1] == 0) return {std::move(alloc), trace};

  // Step 2: the scarce type a goes to the agents with the largest v(a)/v(b).
  const TypeIndex a = u[0] < group[0] ? 0 : 1;
  const TypeIndex b = 1 - a;
  trace.a = a;
  trace.b = b;
  std::vector<AgentIndex> by_ratio(n);
  std::iota(by_ratio.begin(), by_ratio.end(), AgentIndex{0});
  // Cross-multiplication orders v(a)/v(b) with x/0 = +inf and inf == inf.
  std::stable_sort(by_ratio.begin(), by_ratio.end(), [&](AgentIndex i, AgentIndex j) {
    return v(i)[a] * v(j)[b] > v(j)[a] * v(i)[b];
  });
  std::vector<bool> plus(n, false);
  for (std::int64_t k = 0; k < u[a]; ++k) plus[by_ratio[k]] = true;
  for (AgentIndex i = 0; i < n; ++i) {
    if (plus[i]) trace.n_a_plus.push_back(i);
  }
  for (auto i : trace.n_a_plus) give(i, a);
  checkpoint(2);
  if (u[b] == 0) return {std::move(alloc), trace};

  // Step 3: round-robin of type b over the others until a top-ratio agent envies.
  std::vector<AgentIndex> rest;
  for (AgentIndex i = 0; i < n; ++i) {
    if (!plus[i]) rest.push_back(i);
  }
  auto top_agent_envies = [&] {
    const auto g = envy_graph(alloc);
    return std::any_of(trace.n_a_plus.begin(), trace.n_a_plus.end(),
                       [&](AgentIndex j) { return g.out_degree(j) > 0; });
  };
  while (!top_agent_envies()) {
    ++trace.q;
    for (auto i : rest) {
      give(i, b);
      if (u[b] == 0) {
        trace.step3_end = Step3End::exhausted;
        checkpoint(3);
        return {std::move(alloc), trace};
      }
    }
  }
  trace.step3_end = Step3End::envy;
  for (auto j : rest) {
    for (auto i : trace.n_a_plus) {
      if (envies(j, i, alloc)) ++trace.no_envy_lemma_violations;
    }
  }
  if (trace.no_envy_lemma_violations > 0 && options.stepwise_checks) {
    fail(ErrorCode::invariant_violated, "an agent outside the top-ratio group envies a member of it after step 3");
  }
  checkpoint(3);

  // Step 4: round-robin of the remaining type b, top-ratio agents first.
  while (true) {
    ++trace.r;
    for (const auto* group_members : {&trace.n_a_plus, &rest}) {
      for (auto i : *group_members) {
        give(i, b);
        if (u[b] == 0) {
          checkpoint(4);
          return {std::move(alloc), trace};
        }
      }
    }
  }
}

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::auto_select: return "auto";
    case Method::single_type: return "t1";
    case Method::identical_prefs: return "alg1";
    case Method::two_types: return "alg2";
    case Method::geometric: return "geometric";
  }
  return "auto";
}

Method parse_method(std::string_view text) {
  if (text == "auto") return Method::auto_select;
  if (text == "t1") return Method::single_type;
  if (text == "alg1") return Method::identical_prefs;
  if (text == "alg2") return Method::two_types;
  if (text == "geometric") return Method::geometric;
  fail(ErrorCode::invalid_argument, "unknown method '" + std::string(text) + "'");
}

DispatchResult allocate(const InstancePtr& instance, const AlgorithmOptions& options) {
  if (instance->types() == 1) return {allocate_single_type(instance), Method::single_type, std::nullopt};
  if (common_preference_order(*instance)) {
    return {allocate_identical_prefs(instance, options), Method::identical_prefs, std::nullopt};
  }
  if (instance->types() == 2) {
    auto result = allocate_two_types(instance, options);
    return {std::move(result.allocation), Method::two_types, result.trace};
  }
  fail(ErrorCode::unsupported_instance,
       "no supported algorithm: t = " + std::to_string(instance->types()) +
           " and the agents share no preference order (EFX existence for t >= 3 with general additive "
           "valuations is open)");
}

}  // namespace fairdiv
