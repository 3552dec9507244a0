#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <optional>
#include <span>
#include <vector>

#include "mixwel/common.hpp"
#include "mixwel/conflp.hpp"
#include "mixwel/item_set.hpp"
#include "mixwel/random.hpp"

namespace mixwel {

/// The 1/2-OCRS for a rank-1 matroid. Elements arrive in order; an active
/// element i that finds nothing accepted yet is accepted with probability
///   r_i = (1/2) / (1 − Σ_{j<i} p_j / 2).
/// Since Pr[nothing accepted before i] = 1 − Σ_{j<i} p_j/2, every element is
/// accepted with probability exactly 1/2 given that it is active, and the
/// first element with probability exactly 1/2.
class Rank1Ocrs {
 public:
  explicit Rank1Ocrs(std::vector<double> p) : p_(std::move(p)) {
    double before = 0.0;
    accept_.reserve(p_.size());
    for (double pi : p_) {
      if (!(pi >= -kTolerance && pi <= 1.0 + kTolerance)) throw DomainError("ocrs: probability outside [0,1]");
      accept_.push_back(0.5 / (1.0 - before / 2.0));
      before += pi;
    }
    if (before > 1.0 + kTolerance) {
      throw InfeasibleError("ocrs: activation probabilities sum to " + std::to_string(before) + " > 1");
    }
  }

  std::size_t size() const { return p_.size(); }
  const std::vector<double>& activation() const { return p_; }
  /// Conditional acceptance probabilities r_i.
  const std::vector<double>& acceptance() const { return accept_; }

  /// Index of the accepted element, if any. coins[i] is compared against
  /// r_i only when element i is active and nothing was accepted yet.
  std::optional<std::size_t> run(const std::vector<bool>& active, std::span<const double> coins) const {
    if (active.size() != p_.size() || coins.size() != p_.size()) throw ArityError("ocrs: input length mismatch");
    for (std::size_t i = 0; i < p_.size(); ++i) {
      if (active[i] && coins[i] < accept_[i]) return i;
    }
    return std::nullopt;
  }

 private:
  std::vector<double> p_;
  std::vector<double> accept_;
};

inline Rank1Ocrs build_ocrs(std::vector<double> p) { return Rank1Ocrs(std::move(p)); }

inline std::optional<std::size_t> run_ocrs(const Rank1Ocrs& scheme, const std::vector<bool>& active,
                                           std::span<const double> coins) {
  return scheme.run(active, coins);
}

struct RoundingOutcome {
  std::vector<ItemSet> drawn;     // S_i
  std::vector<ItemSet> accepted;  // T_i ⊆ S_i, pairwise disjoint
};

/// Rounds a configuration-LP solution with one rank-1 OCRS per item.
/// Bidder 0 arrives first everywhere, and a single shared coin decides its
/// acceptance at every item, so T_0 is either S_0 or ∅. Other bidders use
/// independent coins per (item, bidder).
class CorrelatedRounder {
 public:
  explicit CorrelatedRounder(const FractionalAllocation& x) : x_(x) {
    if (!x.feasible()) {
      throw InfeasibleError("correlated rounding: fractional solution violates a constraint by " +
                            std::to_string(x.max_violation()));
    }
    const std::size_t n = x.num_bidders();
    per_bidder_.resize(n);
    for (const auto& e : x.entries()) {
      if (e.weight > 0.0) per_bidder_[e.bidder].push_back(e);
    }
    schemes_.reserve(x.num_items());
    for (int j = 0; j < x.num_items(); ++j) {
      std::vector<double> p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = std::clamp(x.item_mass(j, i), 0.0, 1.0);
      schemes_.emplace_back(std::move(p));
    }
  }

  std::size_t num_bidders() const { return per_bidder_.size(); }
  const Rank1Ocrs& scheme(int item) const { return schemes_[item]; }

  RoundingOutcome round(Rng& rng) const {
    const std::size_t n = per_bidder_.size();
    RoundingOutcome out{std::vector<ItemSet>(n), std::vector<ItemSet>(n)};
    for (std::size_t i = 0; i < n; ++i) out.drawn[i] = draw(i, rng.uniform01());
    const double shared = rng.uniform01();
    std::vector<bool> active(n);
    std::vector<double> coins(n);
    for (int j = 0; j < x_.num_items(); ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        active[i] = out.drawn[i].contains(j);
        coins[i] = i == 0 ? shared : rng.uniform01();
      }
      const auto winner = schemes_[j].run(active, coins);
      if (winner) out.accepted[*winner] = out.accepted[*winner].with(j);
    }
    return out;
  }

 private:
  /// Bundle S_i with Pr[S_i = S] = x_{i,S}; leftover mass maps to ∅.
  ItemSet draw(std::size_t i, double u) const {
    double cumulative = 0.0;
    for (const auto& e : per_bidder_[i]) {
      cumulative += e.weight;
      if (u < cumulative) return e.bundle;
    }
    return ItemSet{};
  }

  FractionalAllocation x_;
  std::vector<std::vector<FractionalEntry>> per_bidder_;
  std::vector<Rank1Ocrs> schemes_;
};

inline RoundingOutcome correlated_round(const FractionalAllocation& x, Seed seed) {
  Rng rng(seed);
  return CorrelatedRounder(x).round(rng);
}

}  // namespace mixwel
