#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mixwel/common.hpp"
#include "mixwel/item_set.hpp"

namespace mixwel {

/// Suffix welfare tables over all 2^m item subsets:
///   best[k][S] = max welfare of bidders k..K-1 using only items of S.
/// Built in O(K·3^m) from per-bidder value tables.
class SuffixWelfareDp {
 public:
  SuffixWelfareDp(std::span<const std::vector<double>> tables, int m)
      : m_(m), tables_(tables.begin(), tables.end()) {
    const std::size_t size = std::size_t{1} << m;
    const std::size_t k_count = tables_.size();
    best_.assign(k_count + 1, std::vector<double>(size, 0.0));
    for (std::size_t k = k_count; k-- > 0;) {
      const auto& v = tables_[k];
      const auto& next = best_[k + 1];
      auto& cur = best_[k];
      for (ItemSet::Mask s = 0; s < size; ++s) {
        double best = next[s];
        // Enumerate nonempty T ⊆ S given to bidder k.
        for (ItemSet::Mask t = s; t != 0; t = (t - 1) & s) {
          const double w = v[t] + next[s & ~t];
          if (w > best) best = w;
        }
        cur[s] = best;
      }
    }
  }

  int num_items() const { return m_; }
  std::size_t num_bidders() const { return tables_.size(); }

  double best(ItemSet s, std::size_t from_bidder = 0) const { return best_[from_bidder][s.bits()]; }

  /// Optimal split of `s` among the bidders, lexicographically least by
  /// (bundle of bidder 0, bundle of bidder 1, ...) among maximizers.
  std::vector<ItemSet> split(ItemSet s) const {
    std::vector<ItemSet> out(tables_.size());
    ItemSet rest = s;
    for (std::size_t k = 0; k < tables_.size(); ++k) {
      const double target = best_[k][rest.bits()];
      const auto& next = best_[k + 1];
      const ItemSet::Mask all = rest.bits();
      ItemSet chosen = rest;
      // Subsets of `rest` in increasing bitmask order.
      for (ItemSet::Mask t = 0;; t = (t - all) & all) {
        if (approx_le(target, tables_[k][t] + next[all & ~t])) {
          chosen = ItemSet(t);
          break;
        }
        if (t == all) break;
      }
      out[k] = chosen;
      rest = rest - chosen;
    }
    return out;
  }

 private:
  int m_;
  std::vector<std::vector<double>> tables_;
  std::vector<std::vector<double>> best_;
};

}  // namespace mixwel
