#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fairdiv/fairness.hpp"
#include "fairdiv/model.hpp"

namespace fairdiv {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// Number of complete allocations: prod_a C(m_a + n - 1, n - 1). The total
// saturates at UINT64_MAX.
struct EnumerationPlan {
  std::vector<std::uint64_t> compositions;  // per type
  std::uint64_t total = 0;
  std::uint64_t cap = kDefaultEnumerationCap;

  bool within_cap() const { return total <= cap; }
};

EnumerationPlan plan_enumeration(const Instance& instance, std::uint64_t cap = kDefaultEnumerationCap);

// Walks every complete allocation exactly once, in ascending lexicographic
// order of the flattened (agent-major) bundle matrix.
class CompleteAllocations {
 public:
  // Throws cap_exceeded when the plan's total exceeds the cap.
  explicit CompleteAllocations(InstancePtr instance, std::uint64_t cap = kDefaultEnumerationCap);

  const EnumerationPlan& plan() const noexcept { return plan_; }

  // Produces the next allocation; false once exhausted.
  bool next();
  Allocation current() const;
  // Borrowed view of the current bundles (valid until the next call to next()).
  const std::vector<std::vector<std::int64_t>>& matrix() const noexcept { return cells_; }

 private:
  InstancePtr instance_;
  EnumerationPlan plan_;
  std::vector<std::vector<std::int64_t>> cells_;
  bool started_ = false;
  bool exhausted_ = false;
};

CompleteAllocations enumerate_complete(const InstancePtr& instance, std::uint64_t cap = kDefaultEnumerationCap);

// First allocation in enumeration order passing the criterion.
std::optional<Allocation> exists_fair(const InstancePtr& instance, Criterion criterion,
                                      std::uint64_t cap = kDefaultEnumerationCap);

struct FairCount {
  std::uint64_t total = 0;
  std::uint64_t satisfying = 0;
};

FairCount count_fair(const InstancePtr& instance, Criterion criterion, std::uint64_t cap = kDefaultEnumerationCap);

// Reads FAIRDIV_CAP from the environment, falling back to the default.
std::uint64_t enumeration_cap_from_env();

}  // namespace fairdiv
