#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <memory>
#include <span>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

using AgentIndex = std::size_t;
using TypeIndex = std::size_t;

// A multiset of typed items, stored as one nonnegative multiplicity per type.
class ItemVector {
 public:
  ItemVector() = default;
  explicit ItemVector(std::size_t types) : counts_(types, 0) {}
  explicit ItemVector(std::vector<std::int64_t> counts);
  ItemVector(std::initializer_list<std::int64_t> counts)
      : ItemVector(std::vector<std::int64_t>(counts)) {}

  static ItemVector unit(std::size_t types, TypeIndex a);

  std::size_t types() const noexcept { return counts_.size(); }
  std::int64_t operator[](TypeIndex a) const { return counts_[a]; }
  std::int64_t at(TypeIndex a) const;
  std::span<const std::int64_t> counts() const noexcept { return counts_; }

  std::int64_t total() const noexcept;
  bool empty() const noexcept { return total() == 0; }
  bool contains(TypeIndex a) const { return at(a) > 0; }

  // Componentwise order: this <= other.
  bool subset_of(const ItemVector& other) const;
  bool strict_subset_of(const ItemVector& other) const;

  ItemVector& operator+=(const ItemVector& other);  // multiset sum
  friend ItemVector operator+(ItemVector lhs, const ItemVector& rhs) { return lhs += rhs; }
  // Multiset difference, clamped at zero per type.
  ItemVector minus(const ItemVector& other) const;

  friend bool operator==(const ItemVector&, const ItemVector&) = default;
  friend auto operator<=>(const ItemVector&, const ItemVector&) = default;

 private:
  friend class StrictSubsets;
  std::vector<std::int64_t> counts_;
};

ItemVector add_item(const ItemVector& x, TypeIndex a);
ItemVector remove_item(const ItemVector& x, TypeIndex a);

// Input range over every y <= x with y != x, in lexicographic order
// (last type varies fastest). Size is prod(x_a + 1) - 1.
class StrictSubsets {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = ItemVector;
    using difference_type = std::ptrdiff_t;
    using reference = const ItemVector&;
    using pointer = const ItemVector*;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& lhs, const iterator& rhs) {
      return lhs.done_ == rhs.done_ && (lhs.done_ || lhs.current_ == rhs.current_);
    }

   private:
    friend class StrictSubsets;
    iterator(const ItemVector* bound, bool done);
    const ItemVector* bound_ = nullptr;
    ItemVector current_;
    bool done_ = true;
  };

  explicit StrictSubsets(ItemVector bound) : bound_(std::move(bound)) {}
  iterator begin() const { return iterator(&bound_, bound_.empty()); }
  iterator end() const { return iterator(&bound_, true); }
  std::uint64_t size() const;

 private:
  ItemVector bound_;
};

StrictSubsets strict_subsets(const ItemVector& x);

// v_i(a) per type; every entry >= 0 and at least one entry > 0.
class AdditiveValuation {
 public:
  AdditiveValuation() = default;
  explicit AdditiveValuation(std::vector<Rational> values);
  AdditiveValuation(std::initializer_list<Rational> values)
      : AdditiveValuation(std::vector<Rational>(values)) {}

  std::size_t types() const noexcept { return values_.size(); }
  const Rational& operator[](TypeIndex a) const { return values_[a]; }
  std::span<const Rational> values() const noexcept { return values_; }

  friend bool operator==(const AdditiveValuation&, const AdditiveValuation&) = default;

 private:
  std::vector<Rational> values_;
};

// V(x) = sum_a v(a) * x_a.
Rational value(const AdditiveValuation& v, const ItemVector& x);

class Instance {
 public:
  Instance(ItemVector supply, std::vector<AdditiveValuation> valuations);

  std::size_t agents() const noexcept { return valuations_.size(); }
  std::size_t types() const noexcept { return supply_.types(); }
  const ItemVector& supply() const noexcept { return supply_; }
  const AdditiveValuation& valuation(AgentIndex i) const { return valuations_.at(i); }
  std::span<const AdditiveValuation> valuations() const noexcept { return valuations_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  ItemVector supply_;
  std::vector<AdditiveValuation> valuations_;
};

using InstancePtr = std::shared_ptr<const Instance>;

InstancePtr make_instance(ItemVector supply, std::vector<AdditiveValuation> valuations);

// n bundles whose sum never exceeds the instance supply.
class Allocation {
 public:
  explicit Allocation(InstancePtr instance);  // empty allocation
  Allocation(InstancePtr instance, std::vector<ItemVector> bundles);

  const Instance& instance() const noexcept { return *instance_; }
  const InstancePtr& instance_ptr() const noexcept { return instance_; }
  std::size_t agents() const noexcept { return bundles_.size(); }

  const ItemVector& bundle(AgentIndex i) const { return bundles_.at(i); }
  std::span<const ItemVector> bundles() const noexcept { return bundles_; }

  ItemVector allocated() const;
  ItemVector unallocated() const;
  bool complete() const;

  // V_i(X_j).
  Rational value_of(AgentIndex i, AgentIndex j) const;
  Rational own_value(AgentIndex i) const { return value_of(i, i); }

  // Gives one item of type a to agent i; requires an unallocated item of that type.
  void give(AgentIndex i, TypeIndex a);
  // Replaces X_i; the result must still fit within the supply.
  void set_bundle(AgentIndex i, ItemVector bundle);
  void swap_bundles(AgentIndex i, AgentIndex j);

  friend bool operator==(const Allocation& lhs, const Allocation& rhs) {
    return lhs.bundles_ == rhs.bundles_ && *lhs.instance_ == *rhs.instance_;
  }

 private:
  void check_fits() const;

  InstancePtr instance_;
  std::vector<ItemVector> bundles_;
};

}  // namespace fairdiv
