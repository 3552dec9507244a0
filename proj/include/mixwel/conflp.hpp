#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "mixwel/common.hpp"
#include "mixwel/item_set.hpp"
#include "mixwel/model.hpp"
#include "mixwel/valuations.hpp"

namespace mixwel {

struct FractionalEntry {
  std::size_t bidder = 0;
  ItemSet bundle;
  double weight = 0.0;
  friend bool operator==(const FractionalEntry&, const FractionalEntry&) = default;
};

/// Sparse weights x_{i,S} of the configuration LP.
class FractionalAllocation {
 public:
  FractionalAllocation() = default;
  FractionalAllocation(std::size_t num_bidders, int num_items, std::vector<FractionalEntry> entries)
      : n_(num_bidders), m_(num_items), entries_(std::move(entries)) {
    for (const auto& e : entries_) {
      if (e.bidder >= n_) throw ArityError("fractional allocation: bidder index out of range");
      if (!e.bundle.within(m_)) throw ArityError("fractional allocation: bundle out of range");
    }
  }

  std::size_t num_bidders() const { return n_; }
  int num_items() const { return m_; }
  const std::vector<FractionalEntry>& entries() const { return entries_; }

  double bidder_mass(std::size_t i) const {
    double total = 0.0;
    for (const auto& e : entries_) total += e.bidder == i ? e.weight : 0.0;
    return total;
  }

  /// Σ_S∋j x_{i,S}: the probability that bidder i draws item j.
  double item_mass(int j, std::size_t i) const {
    double total = 0.0;
    for (const auto& e : entries_) total += (e.bidder == i && e.bundle.contains(j)) ? e.weight : 0.0;
    return total;
  }

  double item_mass(int j) const {
    double total = 0.0;
    for (const auto& e : entries_) total += e.bundle.contains(j) ? e.weight : 0.0;
    return total;
  }

  /// Largest violation over the bidder, item and sign constraints.
  double max_violation() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i) worst = std::max(worst, bidder_mass(i) - 1.0);
    for (int j = 0; j < m_; ++j) worst = std::max(worst, item_mass(j) - 1.0);
    for (const auto& e : entries_) worst = std::max(worst, -e.weight);
    return worst;
  }

  bool feasible(double tol = 1e-7) const { return max_violation() <= tol; }

  std::size_t support(double tol = 1e-12) const {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [tol](const FractionalEntry& e) { return e.weight > tol; }));
  }

  double objective(std::span<const Valuation> bidders) const {
    double total = 0.0;
    for (const auto& e : entries_) total += e.weight * bidders[e.bidder].value(e.bundle);
    return total;
  }

 private:
  std::size_t n_ = 0;
  int m_ = 0;
  std::vector<FractionalEntry> entries_;
};

enum class LpMode {
  kDense,             // every (bidder, bundle) column up front
  kColumnGeneration,  // columns priced in through demand queries
};

struct LpOptions {
  LpMode mode = LpMode::kDense;
  int max_items = kLpCap;
  double tolerance = 1e-7;
  int max_pivots = 200000;
};

struct LpSolution {
  double value = 0.0;
  FractionalAllocation x;
  std::vector<double> item_prices;       // duals of the item rows
  std::vector<double> bidder_utilities;  // duals of the bidder rows
  int pivots = 0;
  int rounds = 1;  // pricing rounds (column generation)
};

namespace detail {

/// Revised simplex for  max c·x  s.t.  A x ≤ 1, x ≥ 0  with 0/1 columns.
/// The all-slack basis is feasible, so no phase one is needed. Entering
/// and leaving variables follow Bland's rule, which makes the pivot
/// sequence deterministic and cycle-free.
class PackingSimplex {
 public:
  struct Column {
    std::vector<int> rows;
    double cost = 0.0;
  };

  PackingSimplex(int num_rows, std::vector<Column> columns, double tol, int max_pivots)
      : r_(num_rows), cols_(std::move(columns)), tol_(tol), max_pivots_(max_pivots) {
    basic_.resize(r_);
    for (int k = 0; k < r_; ++k) basic_[k] = num_structural() + k;
    binv_.assign(static_cast<std::size_t>(r_) * r_, 0.0);
    for (int k = 0; k < r_; ++k) at(k, k) = 1.0;
    xb_.assign(r_, 1.0);
  }

  int num_structural() const { return static_cast<int>(cols_.size()); }

  void solve() {
    double cost_scale = 1.0;
    for (const auto& c : cols_) cost_scale = std::max(cost_scale, std::abs(c.cost));
    const double dj_tol = 1e-11 * cost_scale;
    std::vector<double> u(r_);
    while (true) {
      const auto y = duals();
      int enter = -1;
      for (int j = 0; j < num_structural() + r_; ++j) {
        if (reduced_cost(j, y) > dj_tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) break;
      if (pivots_ >= max_pivots_) throw NumericalError("configuration LP: pivot limit reached");

      for (int k = 0; k < r_; ++k) u[k] = binv_times_column(k, enter);
      int leave = -1;
      double best_ratio = 0.0;
      for (int k = 0; k < r_; ++k) {
        if (u[k] <= 1e-9) continue;
        const double ratio = std::max(0.0, xb_[k]) / u[k];
        if (leave < 0 || ratio < best_ratio - 1e-13) {
          leave = k;
          best_ratio = ratio;
        } else if (ratio <= best_ratio + 1e-13 && basic_[k] < basic_[leave]) {
          // Bland: among tied rows, the smallest basic variable leaves.
          leave = k;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
      if (leave < 0) throw NumericalError("configuration LP: unbounded direction (should be impossible)");
      pivot(leave, enter, u);
      if (++pivots_ % 64 == 0) refactor();
    }
    refactor();
  }

  std::vector<double> duals() const {
    std::vector<double> y(r_, 0.0);
    for (int k = 0; k < r_; ++k) {
      const double cb = cost(basic_[k]);
      if (cb == 0.0) continue;
      for (int i = 0; i < r_; ++i) y[i] += cb * at(k, i);
    }
    return y;
  }

  /// Primal values of the structural columns.
  std::vector<double> primal() const {
    std::vector<double> x(cols_.size(), 0.0);
    for (int k = 0; k < r_; ++k) {
      if (basic_[k] < num_structural()) x[basic_[k]] = xb_[k];
    }
    return x;
  }

  int pivots() const { return pivots_; }

 private:
  double& at(int row, int col) { return binv_[static_cast<std::size_t>(row) * r_ + col]; }
  double at(int row, int col) const { return binv_[static_cast<std::size_t>(row) * r_ + col]; }

  double cost(int var) const { return var < num_structural() ? cols_[var].cost : 0.0; }

  double reduced_cost(int var, const std::vector<double>& y) const {
    if (var >= num_structural()) return -y[var - num_structural()];
    double d = cols_[var].cost;
    for (int row : cols_[var].rows) d -= y[row];
    return d;
  }

  double binv_times_column(int k, int var) const {
    if (var >= num_structural()) return at(k, var - num_structural());
    double s = 0.0;
    for (int row : cols_[var].rows) s += at(k, row);
    return s;
  }

  void pivot(int p, int enter, const std::vector<double>& u) {
    const double up = u[p];
    for (int i = 0; i < r_; ++i) at(p, i) /= up;
    xb_[p] /= up;
    for (int k = 0; k < r_; ++k) {
      if (k == p || u[k] == 0.0) continue;
      const double f = u[k];
      for (int i = 0; i < r_; ++i) at(k, i) -= f * at(p, i);
      xb_[k] -= f * xb_[p];
    }
    basic_[p] = enter;
  }

  /// Rebuilds B^{-1} from the basis columns (Gauss-Jordan, partial
  /// pivoting) and recomputes x_B = B^{-1}·1.
  void refactor() {
    std::vector<double> b(static_cast<std::size_t>(r_) * r_, 0.0);
    for (int k = 0; k < r_; ++k) {
      const int var = basic_[k];
      if (var >= num_structural()) {
        b[static_cast<std::size_t>(var - num_structural()) * r_ + k] = 1.0;
      } else {
        for (int row : cols_[var].rows) b[static_cast<std::size_t>(row) * r_ + k] = 1.0;
      }
    }
    std::vector<double> inv(static_cast<std::size_t>(r_) * r_, 0.0);
    for (int k = 0; k < r_; ++k) inv[static_cast<std::size_t>(k) * r_ + k] = 1.0;
    auto B = [&](int i, int j) -> double& { return b[static_cast<std::size_t>(i) * r_ + j]; };
    auto I = [&](int i, int j) -> double& { return inv[static_cast<std::size_t>(i) * r_ + j]; };
    for (int col = 0; col < r_; ++col) {
      int piv = col;
      for (int i = col + 1; i < r_; ++i) {
        if (std::abs(B(i, col)) > std::abs(B(piv, col))) piv = i;
      }
      if (std::abs(B(piv, col)) < 1e-12) throw NumericalError("configuration LP: singular basis");
      if (piv != col) {
        for (int j = 0; j < r_; ++j) {
          std::swap(B(piv, j), B(col, j));
          std::swap(I(piv, j), I(col, j));
        }
      }
      const double d = B(col, col);
      for (int j = 0; j < r_; ++j) {
        B(col, j) /= d;
        I(col, j) /= d;
      }
      for (int i = 0; i < r_; ++i) {
        if (i == col || B(i, col) == 0.0) continue;
        const double f = B(i, col);
        for (int j = 0; j < r_; ++j) {
          B(i, j) -= f * B(col, j);
          I(i, j) -= f * I(col, j);
        }
      }
    }
    binv_ = std::move(inv);
    for (int k = 0; k < r_; ++k) {
      double s = 0.0;
      for (int i = 0; i < r_; ++i) s += at(k, i);
      xb_[k] = s;
    }
  }

  int r_;
  std::vector<Column> cols_;
  double tol_;
  int max_pivots_;
  std::vector<int> basic_;
  std::vector<double> binv_;
  std::vector<double> xb_;
  int pivots_ = 0;
};

struct ColumnKey {
  std::size_t bidder;
  ItemSet bundle;
  friend auto operator<=>(const ColumnKey&, const ColumnKey&) = default;
};

inline LpSolution solve_with_columns(std::span<const Valuation> bidders, int m, const std::vector<ColumnKey>& keys,
                                     const LpOptions& opts) {
  const int n = static_cast<int>(bidders.size());
  std::vector<PackingSimplex::Column> columns;
  columns.reserve(keys.size());
  for (const auto& key : keys) {
    PackingSimplex::Column col;
    col.rows = key.bundle.items();
    col.rows.push_back(m + static_cast<int>(key.bidder));
    col.cost = bidders[key.bidder].value(key.bundle);
    columns.push_back(std::move(col));
  }
  PackingSimplex simplex(m + n, std::move(columns), opts.tolerance, opts.max_pivots);
  simplex.solve();

  const auto x = simplex.primal();
  std::vector<FractionalEntry> entries;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (std::abs(x[k]) <= 1e-13) continue;
    entries.push_back({keys[k].bidder, keys[k].bundle, x[k]});
  }
  LpSolution sol;
  sol.x = FractionalAllocation(bidders.size(), m, std::move(entries));
  const double violation = sol.x.max_violation();
  if (violation > opts.tolerance) {
    throw NumericalError("configuration LP: feasibility residual " + std::to_string(violation) +
                         " exceeds tolerance after refactorization");
  }
  sol.value = sol.x.objective(bidders);
  const auto y = simplex.duals();
  sol.item_prices.assign(y.begin(), y.begin() + m);
  sol.bidder_utilities.assign(y.begin() + m, y.end());
  sol.pivots = simplex.pivots();
  return sol;
}

}  // namespace detail

/// Solves the configuration LP
///   max Σ_i Σ_S v_i(S) x_{i,S}
///   s.t. Σ_i Σ_{S∋j} x_{i,S} ≤ 1 (items),  Σ_S x_{i,S} ≤ 1 (bidders),  x ≥ 0
/// exactly at desk scale. Zero-value bundles are omitted (they never
/// improve the objective).
inline LpSolution solve_configuration_lp(std::span<const Valuation> bidders, int m, const LpOptions& opts = {}) {
  check_cap("configuration LP", m, opts.max_items);
  for (const auto& v : bidders) {
    if (v.num_items() != m) throw ArityError("configuration LP: bidder defined on a different item count");
  }
  if (opts.mode == LpMode::kDense) {
    std::vector<detail::ColumnKey> keys;
    for (std::size_t i = 0; i < bidders.size(); ++i) {
      const auto table = tabulate(bidders[i]);
      for (ItemSet::Mask s = 1; s < table.size(); ++s) {
        if (table[s] > 0.0) keys.push_back({i, ItemSet(s)});
      }
    }
    return detail::solve_with_columns(bidders, m, keys, opts);
  }

  // Column generation: price bundles in with demand queries at the item
  // duals until no bidder has a bundle with positive reduced cost.
  std::set<detail::ColumnKey> pool;
  std::vector<detail::ColumnKey> keys;
  int pivots = 0;
  for (int round = 1;; ++round) {
    LpSolution sol = detail::solve_with_columns(bidders, m, keys, opts);
    pivots += sol.pivots;
    std::vector<double> prices(m);
    for (int j = 0; j < m; ++j) prices[j] = std::max(0.0, sol.item_prices[j]);
    bool added = false;
    for (std::size_t i = 0; i < bidders.size(); ++i) {
      const ItemSet s = bidders[i].demand(prices);
      if (s.empty()) continue;
      double price = 0.0;
      for (int j : s.items()) price += prices[j];
      const double reduced = bidders[i].value(s) - price - std::max(0.0, sol.bidder_utilities[i]);
      if (reduced > 1e-9 * std::max(1.0, bidders[i].value(s)) && pool.insert({i, s}).second) {
        keys.push_back({i, s});
        added = true;
      }
    }
    if (!added) {
      sol.pivots = pivots;
      sol.rounds = round;
      return sol;
    }
  }
}

inline LpSolution solve_configuration_lp(const Instance& inst, const LpOptions& opts = {}) {
  return solve_configuration_lp(inst.bidders(), inst.num_items(), opts);
}

inline double lp_value_only(const Instance& inst, const LpOptions& opts = {}) {
  return solve_configuration_lp(inst, opts).value;
}

inline double lp_value_only(std::span<const Valuation> bidders, int m, const LpOptions& opts = {}) {
  return solve_configuration_lp(bidders, m, opts).value;
}

}  // namespace mixwel
