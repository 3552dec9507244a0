#pragma once

#include <compare>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "mixwel/item_set.hpp"

namespace mixwel {

/// Minimum number of family members needed to cover a target, or infinity
/// when no subfamily covers it. Infinity compares greater than every count.
class CoverNumber {
 public:
  constexpr CoverNumber() = default;
  constexpr explicit CoverNumber(int count) : count_(count) {}
  static constexpr CoverNumber infinite() { return CoverNumber(); }

  constexpr bool is_infinite() const { return count_ < 0; }
  constexpr int count() const { return count_; }

  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(count_); }

  friend constexpr bool operator==(CoverNumber, CoverNumber) = default;
  friend constexpr std::strong_ordering operator<=>(CoverNumber a, CoverNumber b) {
    if (a.is_infinite() || b.is_infinite()) {
      return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
    }
    return a.count_ <=> b.count_;
  }
  friend constexpr bool operator<(CoverNumber a, int k) { return !a.is_infinite() && a.count_ < k; }
  friend constexpr bool operator>(CoverNumber a, int k) { return a.is_infinite() || a.count_ > k; }

 private:
  int count_ = -1;
};

/// Set-cover number, but gives up once more than `limit` members would be
/// needed and returns infinity in that case.
inline CoverNumber phi_set_cover_within(std::span<const ItemSet> family, ItemSet target,
                                        int limit) {
  if (target.empty()) return CoverNumber(0);
  std::vector<ItemSet::Mask> pieces;
  ItemSet reachable;
  for (ItemSet s : family) {
    reachable = reachable | s;
    const auto piece = (s & target).bits();
    if (piece != 0) pieces.push_back(piece);
  }
  if (!target.subset_of(reachable)) return CoverNumber::infinite();
  std::unordered_set<ItemSet::Mask> seen{0};
  std::vector<ItemSet::Mask> frontier{0};
  for (int k = 1; k <= limit; ++k) {
    std::vector<ItemSet::Mask> next;
    for (auto covered : frontier) {
      for (auto piece : pieces) {
        const auto u = covered | piece;
        if (u == target.bits()) return CoverNumber(k);
        if (seen.insert(u).second) next.push_back(u);
      }
    }
    frontier = std::move(next);
  }
  return CoverNumber::infinite();
}

/// Exact set-cover number of `target` by breadth-first search over the
/// covered part of the target: level k holds every T ∩ (union of k members).
inline CoverNumber phi_set_cover(std::span<const ItemSet> family, ItemSet target) {
  // No minimal cover uses more members than the family has.
  return phi_set_cover_within(family, target, static_cast<int>(family.size()));
}

/// True iff covering all m items takes more than lambda family members.
inline bool is_lambda_sparse(std::span<const ItemSet> family, int lambda, int m) {
  return phi_set_cover(family, ItemSet::full(m)) > lambda;
}

}  // namespace mixwel
