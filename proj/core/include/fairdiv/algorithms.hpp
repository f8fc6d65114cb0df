#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fairdiv/model.hpp"

namespace fairdiv {

#ifdef NDEBUG
inline constexpr bool kStepwiseChecksByDefault = false;
#else
inline constexpr bool kStepwiseChecksByDefault = true;
#endif

// Runtime switch for the per-step EFX assertions. On by default in debug
// builds; the acceptance suite turns it on explicitly.
struct AlgorithmOptions {
  bool stepwise_checks = kStepwiseChecksByDefault;
};

// rank[a] is the position of type a, higher = more preferred.
struct PreferenceOrder {
  std::vector<std::size_t> rank;

  // Valid for v iff v(a) > v(b) implies rank[a] > rank[b].
  bool valid_for(const AdditiveValuation& v) const;
  // Types from most to least preferred.
  std::vector<TypeIndex> types_by_preference() const;
};

std::optional<PreferenceOrder> common_preference_order(const Instance& instance);

Allocation allocate_single_type(const InstancePtr& instance);

Allocation allocate_identical_prefs(const InstancePtr& instance, const AlgorithmOptions& options = {});

enum class Step3End { not_run, envy, exhausted };

std::string_view to_string(Step3End end) noexcept;

// Bookkeeping of one run of the two-type allocator. Types are 0-indexed, so
// (a, b) = (0, 1) means type 0 ran short after the round-robin phase.
struct TwoTypeTrace {
  std::int64_t p = 0;          // round-robin rounds
  int steps_run = 1;           // last step executed, 1..4
  std::optional<TypeIndex> a;  // scarce type handed to the top-ratio agents
  std::optional<TypeIndex> b;
  std::vector<AgentIndex> n_a_plus;
  std::int64_t q = 0;  // rounds of the third step
  Step3End step3_end = Step3End::not_run;
  std::int64_t r = 0;  // rounds of the final step
  // Envy-ended third steps where some agent outside n_a_plus envied a member of it.
  int no_envy_lemma_violations = 0;
};

struct TwoTypeResult {
  Allocation allocation;
  TwoTypeTrace trace;
};

TwoTypeResult allocate_two_types(const InstancePtr& instance, const AlgorithmOptions& options = {});

enum class Method { auto_select, single_type, identical_prefs, two_types, geometric };

std::string_view to_string(Method method) noexcept;
Method parse_method(std::string_view text);

struct DispatchResult {
  Allocation allocation;
  Method route;
  std::optional<TwoTypeTrace> trace;
};

// t = 1 -> single type; common order -> identical preferences; t = 2 -> two
// types. Anything else throws unsupported_instance.
DispatchResult allocate(const InstancePtr& instance, const AlgorithmOptions& options = {});

}  // namespace fairdiv
