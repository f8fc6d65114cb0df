#include "fairdiv/model.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "fairdiv/error.hpp"

namespace fairdiv {

ItemVector::ItemVector(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
  for (auto c : counts_) {
    if (c < 0) fail(ErrorCode::invalid_argument, "item multiplicity must be nonnegative");
  }
}

ItemVector ItemVector::unit(std::size_t types, TypeIndex a) {
  ItemVector e(types);
  if (a >= types) fail(ErrorCode::index_out_of_range, "type index " + std::to_string(a) + " out of range");
  e.counts_[a] = 1;
  return e;
}

std::int64_t ItemVector::at(TypeIndex a) const {
  if (a >= counts_.size()) {
    fail(ErrorCode::index_out_of_range, "type index " + std::to_string(a) + " out of range");
  }
  return counts_[a];
}

std::int64_t ItemVector::total() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

bool ItemVector::subset_of(const ItemVector& other) const {
  if (types() != other.types()) fail(ErrorCode::dimension_mismatch, "item vectors differ in length");
  for (std::size_t a = 0; a < counts_.size(); ++a) {
    if (counts_[a] > other.counts_[a]) return false;
  }
  return true;
}

bool ItemVector::strict_subset_of(const ItemVector& other) const {
  return subset_of(other) && *this != other;
}

ItemVector& ItemVector::operator+=(const ItemVector& other) {
  if (types() != other.types()) fail(ErrorCode::dimension_mismatch, "item vectors differ in length");
  for (std::size_t a = 0; a < counts_.size(); ++a) counts_[a] += other.counts_[a];
  return *this;
}

ItemVector ItemVector::minus(const ItemVector& other) const {
  if (types() != other.types()) fail(ErrorCode::dimension_mismatch, "item vectors differ in length");
  ItemVector out(types());
  for (std::size_t a = 0; a < counts_.size(); ++a) {
    out.counts_[a] = std::max<std::int64_t>(counts_[a] - other.counts_[a], 0);
  }
  return out;
}

ItemVector add_item(const ItemVector& x, TypeIndex a) {
  return x + ItemVector::unit(x.types(), a);
}

ItemVector remove_item(const ItemVector& x, TypeIndex a) {
  if (x.at(a) == 0) {
    fail(ErrorCode::underflow, "cannot remove an item of type " + std::to_string(a) + " from a bundle without one");
  }
  return x.minus(ItemVector::unit(x.types(), a));
}

StrictSubsets::iterator::iterator(const ItemVector* bound, bool done)
    : bound_(bound), current_(bound->types()), done_(done) {}

StrictSubsets::iterator& StrictSubsets::iterator::operator++() {
  auto& digits = current_.counts_;
  const auto& limit = bound_->counts_;
  std::size_t a = digits.size();
  while (a > 0) {
    --a;
    if (digits[a] < limit[a]) {
      ++digits[a];
      for (std::size_t b = a + 1; b < digits.size(); ++b) digits[b] = 0;
      done_ = digits == limit;
      return *this;
    }
  }
  done_ = true;
  return *this;
}

std::uint64_t StrictSubsets::size() const {
  std::uint64_t product = 1;
  for (auto c : bound_.counts()) product *= static_cast<std::uint64_t>(c) + 1;
  return product - 1;
}

StrictSubsets strict_subsets(const ItemVector& x) { return StrictSubsets(x); }

AdditiveValuation::AdditiveValuation(std::vector<Rational> values) : values_(std::move(values)) {
  bool positive = false;
  for (const auto& v : values_) {
    if (v.sign() < 0) fail(ErrorCode::invalid_argument, "item values must be nonnegative");
    positive = positive || v.sign() > 0;
  }
  if (!positive) fail(ErrorCode::invalid_argument, "valuation must value at least one type positively");
}

Rational value(const AdditiveValuation& v, const ItemVector& x) {
  if (v.types() != x.types()) {
    fail(ErrorCode::dimension_mismatch, "valuation has " + std::to_string(v.types()) +
                                            " types but bundle has " + std::to_string(x.types()));
  }
  Rational total;
  for (TypeIndex a = 0; a < x.types(); ++a) {
    if (x[a] != 0) total += v[a] * Rational(x[a]);
  }
  return total;
}

Instance::Instance(ItemVector supply, std::vector<AdditiveValuation> valuations)
    : supply_(std::move(supply)), valuations_(std::move(valuations)) {
  if (valuations_.empty()) fail(ErrorCode::invalid_argument, "instance needs at least one agent");
  if (supply_.types() == 0) fail(ErrorCode::invalid_argument, "instance needs at least one item type");
  for (const auto& v : valuations_) {
    if (v.types() != supply_.types()) {
      fail(ErrorCode::dimension_mismatch, "valuation length does not match the number of types");
    }
  }
}

InstancePtr make_instance(ItemVector supply, std::vector<AdditiveValuation> valuations) {
  return std::make_shared<const Instance>(std::move(supply), std::move(valuations));
}

Allocation::Allocation(InstancePtr instance)
    : instance_(std::move(instance)),
      bundles_(instance_->agents(), ItemVector(instance_->types())) {}

Allocation::Allocation(InstancePtr instance, std::vector<ItemVector> bundles)
    : instance_(std::move(instance)), bundles_(std::move(bundles)) {
  if (bundles_.size() != instance_->agents()) {
    fail(ErrorCode::dimension_mismatch, "allocation has " + std::to_string(bundles_.size()) +
                                            " bundles for " + std::to_string(instance_->agents()) + " agents");
  }
  for (const auto& b : bundles_) {
    if (b.types() != instance_->types()) fail(ErrorCode::dimension_mismatch, "bundle length does not match t");
  }
  check_fits();
}

void Allocation::check_fits() const {
  if (!allocated().subset_of(instance_->supply())) {
    fail(ErrorCode::invalid_argument, "allocation exceeds the supply");
  }
}

ItemVector Allocation::allocated() const {
  ItemVector sum(instance_->types());
  for (const auto& b : bundles_) sum += b;
  return sum;
}

ItemVector Allocation::unallocated() const { return instance_->supply().minus(allocated()); }

bool Allocation::complete() const { return allocated() == instance_->supply(); }

Rational Allocation::value_of(AgentIndex i, AgentIndex j) const {
  return value(instance_->valuation(i), bundle(j));
}

void Allocation::give(AgentIndex i, TypeIndex a) {
  if (i >= bundles_.size()) fail(ErrorCode::index_out_of_range, "agent index out of range");
  if (unallocated().at(a) == 0) {
    fail(ErrorCode::underflow, "no unallocated item of type " + std::to_string(a));
  }
  bundles_[i] = add_item(bundles_[i], a);
}

void Allocation::set_bundle(AgentIndex i, ItemVector bundle) {
  if (i >= bundles_.size()) fail(ErrorCode::index_out_of_range, "agent index out of range");
  if (bundle.types() != instance_->types()) fail(ErrorCode::dimension_mismatch, "bundle length does not match t");
  auto previous = std::exchange(bundles_[i], std::move(bundle));
  try {
    check_fits();
  } catch (...) {
    bundles_[i] = std::move(previous);
    throw;
  }
}

void Allocation::swap_bundles(AgentIndex i, AgentIndex j) {
  if (i >= bundles_.size() || j >= bundles_.size()) {
    fail(ErrorCode::index_out_of_range, "agent index out of range");
  }
  std::swap(bundles_[i], bundles_[j]);
}

}  // namespace fairdiv
