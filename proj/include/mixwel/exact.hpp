#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "mixwel/common.hpp"
#include "mixwel/model.hpp"
#include "mixwel/subset_dp.hpp"
#include "mixwel/valuations.hpp"

namespace mixwel {

struct ExactOptions {
  int max_items = kExactCap;
};

struct Optimum {
  double welfare = 0.0;
  Allocation witness;
};

/// Best welfare over allocations in which at most t bidders get items.
struct ScarceProfile {
  int t = 0;
  double welfare = 0.0;
  Allocation witness;
};

/// Brute-force welfare oracle. Value tables are built once per instance;
/// each optimum is a subset dynamic program over all 2^m bundles
/// (O(n·3^m)), which is exact and returns the lexicographically least
/// optimal allocation.
class ExactSolver {
 public:
  explicit ExactSolver(const Instance& inst, ExactOptions opts = {}) : inst_(inst) {
    check_cap("exact optimum", inst.num_items(), opts.max_items);
    tables_.reserve(inst.num_bidders());
    for (const auto& v : inst.bidders()) tables_.push_back(tabulate(v));
  }

  const Instance& instance() const { return inst_; }
  const std::vector<double>& table(std::size_t bidder) const { return tables_[bidder]; }

  /// Optimum over the listed bidders (everyone else gets ∅).
  Optimum optimum_of(const std::vector<std::size_t>& which) const {
    std::vector<std::vector<double>> sub;
    sub.reserve(which.size());
    for (auto i : which) sub.push_back(tables_.at(i));
    const SuffixWelfareDp dp(sub, inst_.num_items());
    const ItemSet all = inst_.all_items();
    return Optimum{dp.best(all), embed(inst_.num_bidders(), which, dp.split(all))};
  }

  Optimum optimum() const {
    std::vector<std::size_t> everyone(inst_.num_bidders());
    for (std::size_t i = 0; i < everyone.size(); ++i) everyone[i] = i;
    return optimum_of(everyone);
  }

  /// Max over all size-t bidder subsets (lexicographic order, first best
  /// kept) of the optimum on that subset.
  ScarceProfile scarce_optimum(int t) const {
    const int n = static_cast<int>(inst_.num_bidders());
    if (t < 1 || t > n) throw DomainError("t-scarce optimum: t must be in [1, n]");
    std::vector<std::size_t> combo(t);
    for (int k = 0; k < t; ++k) combo[k] = k;
    ScarceProfile best{t, -1.0, Allocation::empty(n)};
    while (true) {
      Optimum o = optimum_of(combo);
      if (o.welfare > best.welfare + kTolerance) best = ScarceProfile{t, o.welfare, std::move(o.witness)};
      int k = t - 1;
      while (k >= 0 && combo[k] == static_cast<std::size_t>(n - t + k)) --k;
      if (k < 0) break;
      ++combo[k];
      for (int q = k + 1; q < t; ++q) combo[q] = combo[q - 1] + 1;
    }
    return best;
  }

 private:
  Instance inst_;
  std::vector<std::vector<double>> tables_;
};

inline Optimum optimal_welfare(const Instance& inst, ExactOptions opts = {}) {
  return ExactSolver(inst, opts).optimum();
}

inline ScarceProfile t_scarce_optimum(const Instance& inst, int t, ExactOptions opts = {}) {
  return ExactSolver(inst, opts).scarce_optimum(t);
}

enum class GapVerdict { kOneInstance, kZeroInstance, kNeither };

inline std::string_view verdict_name(GapVerdict v) {
  switch (v) {
    case GapVerdict::kOneInstance: return "one_instance";
    case GapVerdict::kZeroInstance: return "zero_instance";
    case GapVerdict::kNeither: return "neither";
  }
  return "neither";
}

struct GapReport {
  GapVerdict verdict = GapVerdict::kNeither;
  double optimum = 0.0;
  std::vector<ScarceProfile> scarce;  // t = 1..n
  std::vector<double> thresholds;     // unit · t/α(t), t = 1..n
};

/// Decides the welfare gap promise problem by brute force.
///
/// Welfare is measured in units of `unit` (the per-bidder value of a full
/// solution): one_instance iff OPT = n·unit; zero_instance iff every
/// t-scarce optimum is at most unit·t/α(t). The one-instance test is
/// checked first.
inline GapReport gap_welfare_decide(const Instance& inst, const std::function<double(int)>& alpha, double unit = 1.0,
                                    ExactOptions opts = {}) {
  const ExactSolver solver(inst, opts);
  const int n = static_cast<int>(inst.num_bidders());
  GapReport report;
  report.optimum = solver.optimum().welfare;
  bool zero = true;
  for (int t = 1; t <= n; ++t) {
    const double a = alpha(t);
    if (!(a > 0)) throw DomainError("gap_welfare_decide: alpha(t) must be positive");
    ScarceProfile p = solver.scarce_optimum(t);
    const double threshold = unit * t / a;
    // Re-evaluate the witness rather than trusting the table value.
    const double witnessed = welfare(inst, p.witness);
    if (!approx_le(witnessed, threshold) || !approx_le(p.welfare, threshold)) zero = false;
    report.thresholds.push_back(threshold);
    report.scarce.push_back(std::move(p));
  }
  if (approx_eq(report.optimum, unit * n)) {
    report.verdict = GapVerdict::kOneInstance;
  } else if (zero) {
    report.verdict = GapVerdict::kZeroInstance;
  }
  return report;
}

}  // namespace mixwel
