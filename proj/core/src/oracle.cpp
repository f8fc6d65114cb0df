#include "fairdiv/oracle.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>
#include <string>
#include <string_view>

#include "fairdiv/error.hpp"

namespace fairdiv {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

// C(m + n - 1, n - 1): compositions of m into n ordered nonnegative parts.
std::uint64_t compositions(std::uint64_t m, std::uint64_t n) {
  const std::uint64_t k = std::min(n - 1, m);
  unsigned __int128 c = 1;
  for (std::uint64_t j = 1; j <= k; ++j) {
    c = c * (m + n - 1 - k + j) / j;
    if (c > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(c);
}

}  // namespace

EnumerationPlan plan_enumeration(const Instance& instance, std::uint64_t cap) {
  EnumerationPlan plan;
  plan.cap = cap;
  plan.total = 1;
  for (auto m : instance.supply().counts()) {
    const auto c = compositions(static_cast<std::uint64_t>(m), instance.agents());
    plan.compositions.push_back(c);
    plan.total = saturating_mul(plan.total, c);
  }
  return plan;
}

CompleteAllocations::CompleteAllocations(InstancePtr instance, std::uint64_t cap)
    : instance_(std::move(instance)), plan_(plan_enumeration(*instance_, cap)) {
  if (!plan_.within_cap()) {
    fail(ErrorCode::cap_exceeded,
         "enumeration needs " + (plan_.total == kSaturated ? std::string("more than 2^64") : std::to_string(plan_.total)) +
             " allocations, above the cap of " + std::to_string(cap));
  }
  const auto n = instance_->agents();
  const auto t = instance_->types();
  cells_.assign(n, std::vector<std::int64_t>(t, 0));
  for (TypeIndex a = 0; a < t; ++a) cells_[n - 1][a] = instance_->supply()[a];
}

bool CompleteAllocations::next() {
  if (exhausted_) return false;
  if (!started_) {
    started_ = true;
    return true;
  }
  const auto n = instance_->agents();
  const auto t = instance_->types();
  const auto& m = instance_->supply();
  // Odometer over the free cells (all rows but the last), last cell fastest.
  for (std::size_t pos = (n - 1) * t; pos-- > 0;) {
    const auto i = pos / t;
    const auto a = pos % t;
    std::int64_t used_before = 0;
    for (std::size_t k = 0; k < i; ++k) used_before += cells_[k][a];
    if (cells_[i][a] < m[a] - used_before) {
      ++cells_[i][a];
      for (auto later = pos + 1; later < (n - 1) * t; ++later) cells_[later / t][later % t] = 0;
      for (TypeIndex b = 0; b < t; ++b) {
        std::int64_t used = 0;
        for (std::size_t k = 0; k + 1 < n; ++k) used += cells_[k][b];
        cells_[n - 1][b] = m[b] - used;
      }
      return true;
    }
  }
  exhausted_ = true;
  return false;
}

Allocation CompleteAllocations::current() const {
  std::vector<ItemVector> bundles;
  bundles.reserve(cells_.size());
  for (const auto& row : cells_) bundles.emplace_back(row);
  return Allocation(instance_, std::move(bundles));
}

CompleteAllocations enumerate_complete(const InstancePtr& instance, std::uint64_t cap) {
  return CompleteAllocations(instance, cap);
}

std::optional<Allocation> exists_fair(const InstancePtr& instance, Criterion criterion, std::uint64_t cap) {
  auto it = enumerate_complete(instance, cap);
  while (it.next()) {
    auto alloc = it.current();
    if (check(alloc, criterion).satisfied) return alloc;
  }
  return std::nullopt;
}

FairCount count_fair(const InstancePtr& instance, Criterion criterion, std::uint64_t cap) {
  FairCount count;
  auto it = enumerate_complete(instance, cap);
  while (it.next()) {
    ++count.total;
    if (check(it.current(), criterion).satisfied) ++count.satisfying;
  }
  return count;
}

std::uint64_t enumeration_cap_from_env() {
  const char* raw = std::getenv("FAIRDIV_CAP");
  if (raw == nullptr || *raw == '\0') return kDefaultEnumerationCap;
  const std::string_view text(raw);
  std::uint64_t cap = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    fail(ErrorCode::parse_error, "FAIRDIV_CAP must be a nonnegative integer, got '" + std::string(text) + "'");
  }
  return cap;
}

}  // namespace fairdiv
