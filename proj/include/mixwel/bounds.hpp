#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "mixwel/common.hpp"

namespace mixwel {

/// opt(t) for t = 0..n, the best normalized welfare of t bidders.
class OptProfile {
 public:
  enum class Kind { kXos, kSa, kCustom };

  /// opt(n, t) = n(1 − (1 − 1/n)^t).
  static OptProfile xos(int n) {
    std::vector<double> v(n + 1);
    for (int t = 0; t <= n; ++t) v[t] = n * (1.0 - std::pow(1.0 - 1.0 / n, t));
    return OptProfile(Kind::kXos, std::move(v));
  }

  /// t/α(t) = 1 + 1[t = 3]/2 for t ≥ 1, defined for n = 3 only.
  static OptProfile sa(int n = 3) {
    if (n != 3) throw DomainError("sa profile: only n = 3 is defined");
    return OptProfile(Kind::kSa, {0.0, 1.0, 1.0, 1.5});
  }

  static OptProfile custom(std::vector<double> values) {
    if (values.size() < 2) throw DomainError("custom profile: need opt(0..n) with n >= 1");
    if (values[0] != 0.0) throw DomainError("custom profile: opt(0) must be 0");
    for (std::size_t t = 1; t < values.size(); ++t) {
      if (values[t] < values[t - 1]) throw DomainError("custom profile: must be nondecreasing");
    }
    return OptProfile(Kind::kCustom, std::move(values));
  }

  Kind kind() const { return kind_; }
  int n() const { return static_cast<int>(values_.size()) - 1; }
  double operator()(int t) const { return values_.at(t); }
  const std::vector<double>& values() const { return values_; }

 private:
  OptProfile(Kind k, std::vector<double> v) : kind_(k), values_(std::move(v)) {}
  Kind kind_;
  std::vector<double> values_;
};

enum class BinomialMode {
  kExact,
  /// Reproduces a 32-bit signed accumulator with wraparound. Diagnostic
  /// only; the values are wrong from n = 30 on.
  kJavaInt32,
};

/// binom(n, k) by the incremental formula b ← b·(n−i+1)/i, i = 1..min(k, n−k).
inline double binom(int n, int k, BinomialMode mode = BinomialMode::kExact) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  if (mode == BinomialMode::kJavaInt32) {
    std::int32_t b = 1;
    for (int i = 1; i <= k; ++i) {
      const auto prod = static_cast<std::uint32_t>(b) * static_cast<std::uint32_t>(n - i + 1);
      b = static_cast<std::int32_t>(prod) / i;
    }
    return b;
  }
  std::uint64_t b = 1;
  for (int i = 1; i <= k; ++i) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(b) * static_cast<unsigned>(n - i + 1);
    if (prod > ~std::uint64_t{0}) {
      // Beyond 64 bits: finish in floating point.
      double d = static_cast<double>(prod) / i;
      for (int q = i + 1; q <= k; ++q) d = d * (n - q + 1) / q;
      return d;
    }
    b = static_cast<std::uint64_t>(prod / i);
  }
  return static_cast<double>(b);
}

struct BetaQuery {
  int n = 0;
  double p = 0.5;
  double delta = 0.0;
  std::optional<int> t_star;  // maximize over t* ∈ [n] when absent
  BinomialMode binomials = BinomialMode::kExact;
};

struct BetaResult {
  double beta = 0.0;
  int t_star = 1;  // the maximizing t*
};

/// β(n, p, δ) = max_{t*} (pn + (1−p)·opt(t*)) / Σ_t binom(n,t)(1−p)^{n−t} p^t max{opt(t), opt(t*)} − δ.
inline BetaResult beta_detail(const BetaQuery& q, const OptProfile& opt) {
  if (q.n < 1 || q.n != opt.n()) throw DomainError("beta: n must be >= 1 and match the profile");
  if (!(q.p >= 0.0 && q.p < 1.0)) throw DomainError("beta: p must be in [0, 1)");
  if (!(q.delta >= 0.0)) throw DomainError("beta: delta must be >= 0");
  const int n = q.n;
  const int lo = q.t_star.value_or(1);
  const int hi = q.t_star.value_or(n);
  if (lo < 1 || hi > n) throw DomainError("beta: t* must be in [1, n]");
  BetaResult best{-INFINITY, lo};
  for (int ts = lo; ts <= hi; ++ts) {
    const double base = opt(ts);
    double expected = 0.0;
    for (int t = 0; t <= n; ++t) {
      expected += binom(n, t, q.binomials) * std::pow(1.0 - q.p, n - t) * std::pow(q.p, t) * std::max(opt(t), base);
    }
    const double value = (q.p * n + (1.0 - q.p) * base) / expected;
    if (value > best.beta) best = BetaResult{value, ts};
  }
  best.beta -= q.delta;
  return best;
}

inline double beta(const BetaQuery& q, const OptProfile& opt) { return beta_detail(q, opt).beta; }

struct ReferenceRatios {
  double sa_alg;       // 3 − 2/n
  double xos_alg;      // 2
  double sa_classic;   // 2
  double xos_classic;  // 1/(1 − (1 − 1/n)^n)
};

inline ReferenceRatios reference_ratios(int n) {
  if (n < 1) throw DomainError("reference ratios: n must be >= 1");
  return ReferenceRatios{3.0 - 2.0 / n, 2.0, 2.0, 1.0 / (1.0 - std::pow(1.0 - 1.0 / n, n))};
}

inline double e_over_e_minus_1() { return std::numbers::e / (std::numbers::e - 1.0); }

struct SeparationRow {
  int n = 0;
  double p = 0.0;
  double delta = 0.0;
  int t_star = 0;
  double beta = 0.0;
  double target = 0.0;
  double margin = 0.0;  // beta − target
};

struct SeparationReport {
  std::vector<SeparationRow> rows;
  std::optional<SeparationRow> tail;  // β(n_max) against e/(e−1) + δ, when n_max ≥ 150
  bool sweep_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const SeparationRow& r) { return r.margin >= 0.0; });
  }
  bool tail_ok() const { return !tail || tail->margin >= 0.0; }
  bool ok() const { return sweep_ok() && tail_ok(); }
};

/// For n ∈ [n_min, n_max]: β(n, n/(n+1), δ) with the XOS profile against
/// xos_classic(n) + δ, plus the e/(e−1) + δ check at n_max ≥ 150.
inline SeparationReport verify_xos_separation(int n_max = 150, int n_min = 2, double delta = 0.001,
                                              BinomialMode mode = BinomialMode::kExact) {
  SeparationReport report;
  for (int n = n_min; n <= n_max; ++n) {
    const double p = static_cast<double>(n) / (n + 1);
    const BetaResult b = beta_detail(BetaQuery{n, p, delta, std::nullopt, mode}, OptProfile::xos(n));
    const double target = reference_ratios(n).xos_classic + delta;
    report.rows.push_back(SeparationRow{n, p, delta, b.t_star, b.beta, target, b.beta - target});
  }
  if (n_max >= 150 && !report.rows.empty()) {
    SeparationRow tail = report.rows.back();
    tail.target = e_over_e_minus_1() + delta;
    tail.margin = tail.beta - tail.target;
    report.tail = tail;
  }
  return report;
}

}  // namespace mixwel
