#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "mixwel/algorithms.hpp"
#include "mixwel/exact.hpp"

namespace mixwel {

enum class AlgorithmId { kGiveAll, kSaSucc, kSaSuccHalf, kXosSucc, kExact };

inline std::string_view algorithm_name(AlgorithmId a) {
  switch (a) {
    case AlgorithmId::kGiveAll: return "give_all";
    case AlgorithmId::kSaSucc: return "sa_succ";
    case AlgorithmId::kSaSuccHalf: return "sa_succ_half";
    case AlgorithmId::kXosSucc: return "xos_succ";
    case AlgorithmId::kExact: return "exact";
  }
  return "?";
}

inline AlgorithmId parse_algorithm(std::string_view name) {
  for (auto a : {AlgorithmId::kGiveAll, AlgorithmId::kSaSucc, AlgorithmId::kSaSuccHalf, AlgorithmId::kXosSucc,
                 AlgorithmId::kExact}) {
    if (algorithm_name(a) == name) return a;
  }
  throw DomainError("unknown algorithm id \"" + std::string(name) + "\"");
}

inline bool is_randomized(AlgorithmId a) { return a == AlgorithmId::kXosSucc; }

/// All items to the bidder valuing M most (lowest index on ties).
inline AlgorithmReport give_all(const Instance& inst) {
  std::size_t winner = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < inst.num_bidders(); ++i) {
    const double v = inst.bidder(i).value(inst.all_items());
    if (v > best + kTolerance) {
      best = v;
      winner = i;
    }
  }
  std::vector<ItemSet> bundles(inst.num_bidders());
  bundles[winner] = inst.all_items();
  return AlgorithmReport{Allocation(std::move(bundles)), best, "bidder_" + std::to_string(winner), std::nullopt};
}

struct RatioReport {
  double mean = 0.0;
  double std_error = 0.0;
  double optimum = 0.0;
  double ratio = 1.0;  // mean / OPT, 1 when OPT = 0
  int trials = 0;
  std::optional<double> lp_value;
};

/// Welfare of pipeline.run(derive_seed(seed, k)) for k < trials, computed
/// on up to `jobs` threads. Trial k always lands in slot k.
inline std::vector<double> run_trials(const XosSuccPipeline& pipeline, int trials, Seed seed, int jobs = 1) {
  std::vector<double> out(trials);
  auto work = [&](int begin, int step) {
    for (int k = begin; k < trials; k += step) {
      out[k] = pipeline.run(derive_seed(seed, static_cast<std::uint64_t>(k))).welfare;
    }
  };
  jobs = std::clamp(jobs, 1, std::max(1, trials));
  if (jobs == 1) {
    work(0, 1);
    return out;
  }
  std::vector<std::jthread> pool;
  for (int w = 0; w < jobs; ++w) pool.emplace_back(work, w, jobs);
  return out;
}

struct Moments {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Welford's mean and variance, in index order.
inline Moments moments(const std::vector<double>& xs) {
  double mean = 0.0, m2 = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double d = xs[k] - mean;
    mean += d / static_cast<double>(k + 1);
    m2 += d * (xs[k] - mean);
  }
  const double n = static_cast<double>(xs.size());
  return Moments{mean, xs.size() > 1 ? std::sqrt(m2 / (n - 1) / n) : 0.0};
}

/// Mean welfare of an algorithm over `trials` runs with seeds
/// derive_seed(seed, k), against the exact optimum. Deterministic
/// algorithms are run once; their standard error is 0.
inline RatioReport empirical_ratio(const Instance& inst, AlgorithmId alg, int trials, Seed seed, int jobs = 1) {
  if (trials < 1) throw DomainError("empirical_ratio: trials must be >= 1");
  RatioReport out;
  out.trials = trials;
  out.optimum = optimal_welfare(inst).welfare;
  switch (alg) {
    case AlgorithmId::kGiveAll: out.mean = give_all(inst).welfare; break;
    case AlgorithmId::kSaSucc: out.mean = sa_succ(inst).welfare; break;
    case AlgorithmId::kSaSuccHalf: out.mean = sa_succ(inst, half_oracle_subsolver).welfare; break;
    case AlgorithmId::kExact: out.mean = out.optimum; break;
    case AlgorithmId::kXosSucc: {
      const XosSuccPipeline pipeline(inst);
      out.lp_value = pipeline.lp_value();
      const Moments mo = moments(run_trials(pipeline, trials, seed, jobs));
      out.mean = mo.mean;
      out.std_error = mo.std_error;
      break;
    }
  }
  out.ratio = out.optimum > 0.0 ? out.mean / out.optimum : 1.0;
  return out;
}

}  // namespace mixwel
