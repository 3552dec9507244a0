#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "mixwel/common.hpp"

namespace mixwel {

/// A bundle of items, stored as a bitmask over item indices 0..31.
///
/// The enclosing item count m is not stored; complement() takes it
/// explicitly. Ordering compares raw bitmasks, which is the tie-break order
/// used throughout (smallest bitmask first).
class ItemSet {
 public:
  using Mask = std::uint32_t;

  constexpr ItemSet() = default;
  constexpr explicit ItemSet(Mask bits) : bits_(bits) {}
  constexpr ItemSet(std::initializer_list<int> items) {
    for (int j : items) bits_ |= Mask{1} << j;
  }

  static ItemSet from_items(std::span<const int> items) {
    ItemSet s;
    for (int j : items) s = s.with(j);
    return s;
  }

  static constexpr ItemSet full(int m) {
    return ItemSet(m >= 32 ? ~Mask{0} : (Mask{1} << m) - 1);
  }

  constexpr Mask bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int j) const { return (bits_ >> j) & 1U; }
  constexpr ItemSet with(int j) const { return ItemSet(bits_ | (Mask{1} << j)); }
  constexpr bool subset_of(ItemSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool superset_of(ItemSet other) const { return other.subset_of(*this); }
  constexpr bool intersects(ItemSet other) const { return (bits_ & other.bits_) != 0; }
  constexpr ItemSet complement(int m) const { return ItemSet(~bits_ & full(m).bits_); }
  constexpr bool within(int m) const { return subset_of(full(m)); }

  /// Largest member + 1, or 0 when empty.
  constexpr int span_bound() const { return 32 - std::countl_zero(bits_); }

  std::vector<int> items() const {
    std::vector<int> out;
    for (Mask b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int j : items()) {
      if (!first) s += ",";
      s += std::to_string(j);
      first = false;
    }
    return s + "}";
  }

  friend constexpr ItemSet operator|(ItemSet a, ItemSet b) { return ItemSet(a.bits_ | b.bits_); }
  friend constexpr ItemSet operator&(ItemSet a, ItemSet b) { return ItemSet(a.bits_ & b.bits_); }
  /// Set difference.
  friend constexpr ItemSet operator-(ItemSet a, ItemSet b) { return ItemSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(ItemSet, ItemSet) = default;
  friend constexpr auto operator<=>(ItemSet, ItemSet) = default;

 private:
  Mask bits_ = 0;
};

/// Calls fn(T) for every T ⊆ s, in increasing bitmask order.
template <class Fn>
void for_each_subset(ItemSet s, Fn&& fn) {
  const ItemSet::Mask all = s.bits();
  ItemSet::Mask t = 0;
  while (true) {
    fn(ItemSet(t));
    if (t == all) break;
    t = (t - all) & all;
  }
}

}  // namespace mixwel
