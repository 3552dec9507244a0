#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mixwel/common.hpp"
#include "mixwel/item_set.hpp"
#include "mixwel/valuations.hpp"

namespace mixwel {

/// One bundle per bidder, pairwise disjoint. Items in no bundle are
/// discarded.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::vector<ItemSet> bundles) : bundles_(std::move(bundles)) {
    ItemSet seen;
    for (std::size_t i = 0; i < bundles_.size(); ++i) {
      if (bundles_[i].intersects(seen)) {
        throw InvalidAllocationError("allocation: bundle of bidder " + std::to_string(i) +
                                     " overlaps an earlier bundle");
      }
      seen = seen | bundles_[i];
    }
  }

  static Allocation empty(std::size_t n) { return Allocation(std::vector<ItemSet>(n)); }

  std::size_t size() const { return bundles_.size(); }
  ItemSet operator[](std::size_t i) const { return bundles_[i]; }
  const std::vector<ItemSet>& bundles() const { return bundles_; }

  ItemSet allocated() const {
    ItemSet all;
    for (ItemSet b : bundles_) all = all | b;
    return all;
  }

  /// Number of bidders with a nonempty bundle.
  int support() const {
    int k = 0;
    for (ItemSet b : bundles_) k += b.empty() ? 0 : 1;
    return k;
  }

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::vector<ItemSet> bundles_;
};

/// Where a generated instance came from.
struct Provenance {
  std::string family;
  std::string params_json;  // serialized parameter object
  std::uint64_t seed = 0;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

class Instance {
 public:
  Instance(int m, std::vector<Valuation> bidders, std::optional<Provenance> provenance = std::nullopt)
      : m_(m), bidders_(std::move(bidders)), provenance_(std::move(provenance)) {
    if (m < 1) throw ArityError("instance: m must be >= 1");
    check_cap("instance", m, 31);
    if (bidders_.empty()) throw ArityError("instance: needs at least one bidder");
    for (std::size_t i = 0; i < bidders_.size(); ++i) {
      if (bidders_[i].num_items() != m) {
        throw ArityError("instance: bidder " + std::to_string(i) + " is defined on " +
                         std::to_string(bidders_[i].num_items()) + " items, expected " + std::to_string(m));
      }
    }
  }

  int num_items() const { return m_; }
  std::size_t num_bidders() const { return bidders_.size(); }
  const Valuation& bidder(std::size_t i) const { return bidders_[i]; }
  const std::vector<Valuation>& bidders() const { return bidders_; }
  const std::optional<Provenance>& provenance() const { return provenance_; }
  ItemSet all_items() const { return ItemSet::full(m_); }

  /// Sub-instance on the given bidders, in the given order.
  Instance restricted_to(const std::vector<std::size_t>& which) const {
    std::vector<Valuation> sub;
    sub.reserve(which.size());
    for (auto i : which) sub.push_back(bidders_.at(i));
    return Instance(m_, std::move(sub));
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int m_;
  std::vector<Valuation> bidders_;
  std::optional<Provenance> provenance_;
};

/// Σ_i v_i(A_i).
inline double welfare(const Instance& inst, const Allocation& alloc) {
  if (alloc.size() != inst.num_bidders()) {
    throw ArityError("welfare: allocation has " + std::to_string(alloc.size()) + " bundles for " +
                     std::to_string(inst.num_bidders()) + " bidders");
  }
  if (!alloc.allocated().within(inst.num_items())) throw InvalidAllocationError("welfare: item out of range");
  double total = 0.0;
  for (std::size_t i = 0; i < alloc.size(); ++i) total += inst.bidder(i).value(alloc[i]);
  return total;
}

/// Places bundles of a sub-instance (bidders `which`) into a full-length
/// allocation; everyone else gets ∅.
inline Allocation embed(std::size_t n, const std::vector<std::size_t>& which, const std::vector<ItemSet>& bundles) {
  std::vector<ItemSet> full(n);
  for (std::size_t k = 0; k < which.size(); ++k) full[which[k]] = bundles[k];
  return Allocation(std::move(full));
}

}  // namespace mixwel
