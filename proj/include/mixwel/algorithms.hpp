#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mixwel/common.hpp"
#include "mixwel/conflp.hpp"
#include "mixwel/exact.hpp"
#include "mixwel/model.hpp"
#include "mixwel/random.hpp"
#include "mixwel/rounding.hpp"
#include "mixwel/valuations.hpp"

namespace mixwel {

struct AlgorithmReport {
  Allocation allocation;
  double welfare = 0.0;
  std::string branch;               // which candidate won (sa_succ)
  std::optional<double> lp_value;   // configuration LP value (xos_succ)
};

/// Indices of succinct and non-succinct bidders, each in index order.
struct BidderSplit {
  std::vector<std::size_t> succinct;
  std::vector<std::size_t> other;
};

inline BidderSplit split_bidders(const Instance& inst) {
  BidderSplit out;
  for (std::size_t i = 0; i < inst.num_bidders(); ++i) {
    (is_succinct_class(inst.bidder(i).kind()) ? out.succinct : out.other).push_back(i);
  }
  return out;
}

/// Allocates items among an all-subadditive sub-instance.
using SaSubsolver = std::function<Allocation(const Instance&)>;

inline Allocation exact_subsolver(const Instance& inst) { return optimal_welfare(inst).witness; }

/// A deliberately weak 2-approximation: starts from the optimum and keeps
/// discarding the bidder with the smallest value (highest index on ties)
/// while the rest still has at least half the optimal welfare.
inline Allocation half_oracle_subsolver(const Instance& inst) {
  const Optimum opt = optimal_welfare(inst);
  std::vector<ItemSet> bundles = opt.witness.bundles();
  double total = opt.welfare;
  while (true) {
    std::optional<std::size_t> drop;
    double drop_value = 0.0;
    for (std::size_t i = 0; i < bundles.size(); ++i) {
      if (bundles[i].empty()) continue;
      const double v = inst.bidder(i).value(bundles[i]);
      if (!drop || v <= drop_value) {
        drop = i;
        drop_value = v;
      }
    }
    if (!drop || !approx_le(opt.welfare / 2.0, total - drop_value)) break;
    bundles[*drop] = ItemSet{};
    total -= drop_value;
  }
  return Allocation(std::move(bundles));
}

/// (3 − 2/n)-approximation for subadditive plus succinct bidders, n the
/// number of subadditive bidders. Candidates, in order: for every
/// subadditive bidder i, the optimum over {succinct} ∪ {i}; then the
/// sub-solver's allocation of the subadditive bidders alone. The first
/// candidate of maximal welfare is returned.
inline AlgorithmReport sa_succ(const Instance& inst, const SaSubsolver& subsolver = exact_subsolver,
                               ExactOptions opts = {}) {
  check_cap("sa_succ", inst.num_items(), opts.max_items);
  const BidderSplit split = split_bidders(inst);
  const std::size_t n = inst.num_bidders();
  const ExactSolver solver(inst, opts);

  AlgorithmReport best{Allocation::empty(n), -1.0, "", std::nullopt};
  auto consider = [&](Allocation alloc, std::string branch) {
    const double w = welfare(inst, alloc);
    if (w > best.welfare + kTolerance) best = AlgorithmReport{std::move(alloc), w, std::move(branch), std::nullopt};
  };

  if (split.other.empty()) {
    consider(solver.optimum_of(split.succinct).witness, "succinct_only");
    return best;
  }
  for (std::size_t i : split.other) {
    std::vector<std::size_t> group = split.succinct;
    group.push_back(i);
    std::sort(group.begin(), group.end());
    consider(solver.optimum_of(group).witness, "opt_with_" + std::to_string(i));
  }
  const Allocation sub = subsolver(inst.restricted_to(split.other));
  consider(embed(n, split.other, sub.bundles()), "subadditive_only");
  return best;
}

/// The XOS plus succinct pipeline: the succinct bidders are merged into a
/// surrogate bidder 0, the configuration LP is solved over the surrogate
/// and the remaining bidders, the solution is rounded with correlated
/// OCRSs, and the surrogate's share is split optimally among the succinct
/// bidders. Everything but the rounding is done once.
class XosSuccPipeline {
 public:
  explicit XosSuccPipeline(const Instance& inst, LpOptions lp = {})
      : inst_(inst), split_(split_bidders(inst)), surrogate_(make_members(inst, split_.succinct)) {
    check_cap("xos_succ", inst.num_items(), std::min(lp.max_items, kExactCap));
    reduced_.reserve(split_.other.size() + 1);
    reduced_.push_back(Valuation(surrogate_));
    for (std::size_t i : split_.other) reduced_.push_back(inst.bidder(i));
    lp_ = solve_configuration_lp(reduced_, inst.num_items(), lp);
    rounder_.emplace(lp_.x);
  }

  const Instance& instance() const { return inst_; }
  const LpSolution& lp() const { return lp_; }
  double lp_value() const { return lp_.value; }
  const SurrogateValuation& surrogate() const { return surrogate_; }

  AlgorithmReport run(Rng& rng) const {
    const RoundingOutcome r = rounder_->round(rng);
    std::vector<ItemSet> bundles(inst_.num_bidders());
    const auto shares = surrogate_.split(r.accepted[0]);
    for (std::size_t k = 0; k < split_.succinct.size(); ++k) bundles[split_.succinct[k]] = shares[k];
    for (std::size_t k = 0; k < split_.other.size(); ++k) bundles[split_.other[k]] = r.accepted[k + 1];
    Allocation alloc(std::move(bundles));
    const double w = welfare(inst_, alloc);
    return AlgorithmReport{std::move(alloc), w, "", lp_.value};
  }

  AlgorithmReport run(Seed seed) const {
    Rng rng(seed);
    return run(rng);
  }

 private:
  static SurrogateValuation make_members(const Instance& inst, const std::vector<std::size_t>& which) {
    std::vector<Valuation> members;
    for (std::size_t i : which) members.push_back(inst.bidder(i));
    return make_surrogate(inst.num_items(), std::move(members));
  }

  Instance inst_;
  BidderSplit split_;
  SurrogateValuation surrogate_;
  std::vector<Valuation> reduced_;
  LpSolution lp_;
  std::optional<CorrelatedRounder> rounder_;
};

inline AlgorithmReport xos_succ(const Instance& inst, Seed seed, LpOptions lp = {}) {
  return XosSuccPipeline(inst, lp).run(seed);
}

/// Runs `alg` k times with seeds derived from `seed` and keeps the first
/// report of maximal welfare.
inline AlgorithmReport best_of_repetition(const std::function<AlgorithmReport(Seed)>& alg, int k, Seed seed) {
  if (k < 1) throw DomainError("best_of_repetition: k must be >= 1");
  AlgorithmReport best = alg(derive_seed(seed, 0));
  for (int r = 1; r < k; ++r) {
    AlgorithmReport next = alg(derive_seed(seed, static_cast<std::uint64_t>(r)));
    if (next.welfare > best.welfare + kTolerance) best = std::move(next);
  }
  return best;
}

}  // namespace mixwel
