#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "mixwel/common.hpp"
#include "mixwel/item_set.hpp"
#include "mixwel/set_cover.hpp"
#include "mixwel/subset_dp.hpp"

namespace mixwel {

enum class ValuationClass {
  kSingleMinded,
  kXos,
  kSubadditiveSetCover,
  kOneTwo,
  kComposedGrid,
  kExplicit,
  kSurrogate,
};

inline std::string_view class_name(ValuationClass c) {
  switch (c) {
    case ValuationClass::kSingleMinded: return "single_minded";
    case ValuationClass::kXos: return "xos";
    case ValuationClass::kSubadditiveSetCover: return "subadditive_setcover";
    case ValuationClass::kOneTwo: return "one_two";
    case ValuationClass::kComposedGrid: return "composed_grid";
    case ValuationClass::kExplicit: return "explicit";
    case ValuationClass::kSurrogate: return "surrogate";
  }
  return "unknown";
}

inline std::optional<ValuationClass> parse_class_name(std::string_view name) {
  for (auto c : {ValuationClass::kSingleMinded, ValuationClass::kXos,
                 ValuationClass::kSubadditiveSetCover, ValuationClass::kOneTwo,
                 ValuationClass::kComposedGrid, ValuationClass::kExplicit,
                 ValuationClass::kSurrogate}) {
    if (class_name(c) == name) return c;
  }
  return std::nullopt;
}

/// Single-minded and explicit-table bidders are the succinct ones.
inline bool is_succinct_class(ValuationClass c) {
  return c == ValuationClass::kSingleMinded || c == ValuationClass::kExplicit;
}

namespace detail {
struct ValuationModel;
}

/// Type-erased, immutable valuation handle. Copies share the underlying
/// valuation.
class Valuation {
 public:
  template <class T>
    requires(!std::same_as<std::remove_cvref_t<T>, Valuation>)
  Valuation(T concrete);  // NOLINT: implicit by design of the variant wrapper

  double value(ItemSet s) const;
  int num_items() const;
  ValuationClass kind() const;

  /// Utility-maximizing bundle at the given item prices; ties go to the
  /// smallest bitmask.
  ItemSet demand(std::span<const double> prices) const;

  template <class T>
  const T* get_if() const;

  /// Dispatches fn on the concrete valuation.
  template <class Fn>
  decltype(auto) visit(Fn&& fn) const;

  friend bool operator==(const Valuation& a, const Valuation& b);

 private:
  std::shared_ptr<const detail::ValuationModel> model_;
};

/// v(S) = w · 1[S ⊇ T].
class SingleMinded {
 public:
  SingleMinded(int m, double weight, ItemSet bundle) : m_(m), weight_(weight), bundle_(bundle) {
    if (weight < 0) throw DomainError("single_minded: negative weight");
    if (!bundle.within(m)) throw ArityError("single_minded: bundle item out of range");
  }

  int num_items() const { return m_; }
  double weight() const { return weight_; }
  ItemSet bundle() const { return bundle_; }
  double value(ItemSet s) const { return s.superset_of(bundle_) ? weight_ : 0.0; }

  friend bool operator==(const SingleMinded&, const SingleMinded&) = default;

 private:
  int m_;
  double weight_;
  ItemSet bundle_;
};

/// v(S) = max over clauses c of Σ_{j∈S} c_j.
class XosClauses {
 public:
  XosClauses(int m, std::vector<std::vector<double>> clauses) : m_(m), clauses_(std::move(clauses)) {
    if (clauses_.empty()) throw DomainError("xos: needs at least one clause");
    for (const auto& c : clauses_) {
      if (static_cast<int>(c.size()) != m) {
        throw ArityError("xos: clause length " + std::to_string(c.size()) + " != m=" + std::to_string(m));
      }
      for (double x : c) {
        if (x < 0) throw DomainError("xos: negative clause coefficient");
      }
    }
  }

  int num_items() const { return m_; }
  const std::vector<std::vector<double>>& clauses() const { return clauses_; }

  double value(ItemSet s) const {
    double best = 0.0;
    for (const auto& c : clauses_) {
      double sum = 0.0;
      for (ItemSet::Mask b = s.bits(); b != 0; b &= b - 1) sum += c[std::countr_zero(b)];
      best = std::max(best, sum);
    }
    return best;
  }

  /// Per-clause demand: the best clause's strictly profitable items.
  ItemSet demand(std::span<const double> prices) const {
    std::vector<double> utility(clauses_.size(), 0.0);
    double best = 0.0;
    for (std::size_t k = 0; k < clauses_.size(); ++k) {
      for (int j = 0; j < m_; ++j) utility[k] += std::max(0.0, clauses_[k][j] - prices[j]);
      best = std::max(best, utility[k]);
    }
    std::optional<ItemSet> answer;
    for (std::size_t k = 0; k < clauses_.size(); ++k) {
      if (!approx_le(best, utility[k])) continue;
      ItemSet profitable;
      for (int j = 0; j < m_; ++j) {
        if (clauses_[k][j] - prices[j] > kTolerance) profitable = profitable.with(j);
      }
      if (!answer || profitable < *answer) answer = profitable;
    }
    return answer.value_or(ItemSet{});
  }

  friend bool operator==(const XosClauses&, const XosClauses&) = default;

 private:
  int m_;
  std::vector<std::vector<double>> clauses_;
};

/// Set-cover subadditive function f_X, stored through the complements
/// X̄_1..X̄_z of the sets X_ℓ. With φ the cover number over {X̄_ℓ}:
///   f(S) = φ(S)          if φ(S) < λ/2
///        = λ − φ(S̄)      if φ(S̄) < λ/2
///        = λ/2           otherwise
/// multiplied by `scale`. Construction rejects families that are not
/// λ-sparse.
class SetCoverSubadditive {
 public:
  SetCoverSubadditive(int m, std::vector<ItemSet> cover_sets, int lambda, double scale = 1.0)
      : m_(m), cover_sets_(std::move(cover_sets)), lambda_(lambda), scale_(scale) {
    if (lambda < 2 || lambda % 2 != 0) throw DomainError("subadditive_setcover: lambda must be even and >= 2");
    if (scale <= 0) throw DomainError("subadditive_setcover: scale must be positive");
    for (ItemSet s : cover_sets_) {
      if (!s.within(m)) throw ArityError("subadditive_setcover: cover set item out of range");
    }
    if (!is_lambda_sparse(cover_sets_, lambda_, m_)) {
      throw DomainError("subadditive_setcover: cover sets are not " + std::to_string(lambda) + "-sparse");
    }
  }

  int num_items() const { return m_; }
  int lambda() const { return lambda_; }
  double scale() const { return scale_; }
  const std::vector<ItemSet>& cover_sets() const { return cover_sets_; }

  /// Unscaled three-case value.
  int raw_value(ItemSet s) const {
    const int half = lambda_ / 2;
    const CoverNumber direct = phi_set_cover_within(cover_sets_, s, half - 1);
    if (direct < half) return direct.count();
    const CoverNumber other = phi_set_cover_within(cover_sets_, s.complement(m_), half - 1);
    if (other < half) return lambda_ - other.count();
    return half;
  }

  double value(ItemSet s) const { return scale_ * raw_value(s); }

  friend bool operator==(const SetCoverSubadditive&, const SetCoverSubadditive&) = default;

 private:
  int m_;
  std::vector<ItemSet> cover_sets_;
  int lambda_;
  double scale_;
};

/// One-two valuation of bidder `own_index` over partitions A_1..A_z:
///   v(S) = 1[S ≠ ∅] + max_{ℓ ∈ X} 1[S ⊇ A_{ℓ,own}].
class OneTwoValuation {
 public:
  OneTwoValuation(int m, std::vector<std::vector<ItemSet>> partitions, int own_index,
                  std::vector<int> disj_input)
      : m_(m), partitions_(std::move(partitions)), own_index_(own_index), disj_input_(std::move(disj_input)) {
    const ItemSet all = ItemSet::full(m);
    for (const auto& partition : partitions_) {
      ItemSet seen;
      for (ItemSet part : partition) {
        if (!part.within(m)) throw ArityError("one_two: partition item out of range");
        if (part.intersects(seen)) throw DomainError("one_two: partition parts overlap");
        seen = seen | part;
      }
      if (seen != all) throw DomainError("one_two: partition does not cover all items");
      if (partition.size() != partitions_.front().size()) throw ArityError("one_two: partitions differ in arity");
    }
    const int n = partitions_.empty() ? 0 : static_cast<int>(partitions_.front().size());
    if (own_index < 0 || (!partitions_.empty() && own_index >= n)) {
      throw ArityError("one_two: own_index out of range");
    }
    for (int l : disj_input_) {
      if (l < 0 || l >= static_cast<int>(partitions_.size())) throw ArityError("one_two: disj_input index out of range");
    }
  }

  int num_items() const { return m_; }
  const std::vector<std::vector<ItemSet>>& partitions() const { return partitions_; }
  int own_index() const { return own_index_; }
  const std::vector<int>& disj_input() const { return disj_input_; }

  double value(ItemSet s) const {
    if (s.empty()) return 0.0;
    for (int l : disj_input_) {
      if (s.superset_of(partitions_[l][own_index_])) return 2.0;
    }
    return 1.0;
  }

  friend bool operator==(const OneTwoValuation&, const OneTwoValuation&) = default;

 private:
  int m_;
  std::vector<std::vector<ItemSet>> partitions_;
  int own_index_;
  std::vector<int> disj_input_;
};

/// Valuation on a rows × cols item grid (item = col·rows + row):
///   v(S) = scale · max_{ℓ ∈ X} Σ_{j ∈ S_ℓ} inner(S ∩ column j),
/// where column sets S_ℓ ⊆ [cols] and the inner valuation lives on `rows`
/// items.
class ComposedGridValuation {
 public:
  ComposedGridValuation(int rows, int cols, double scale, std::vector<ItemSet> column_sets,
                        std::vector<int> own_input, Valuation inner);

  int num_items() const { return rows_ * cols_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double scale() const { return scale_; }
  const std::vector<ItemSet>& column_sets() const { return column_sets_; }
  const std::vector<int>& own_input() const { return own_input_; }
  const Valuation& inner() const { return inner_; }

  /// Items of column j.
  ItemSet column(int j) const { return ItemSet(ItemSet::full(rows_).bits() << (j * rows_)); }

  ItemSet project(ItemSet s, int j) const {
    return ItemSet((s.bits() >> (j * rows_)) & ItemSet::full(rows_).bits());
  }

  double value(ItemSet s) const;

  friend bool operator==(const ComposedGridValuation& a, const ComposedGridValuation& b);

 private:
  int rows_;
  int cols_;
  double scale_;
  std::vector<ItemSet> column_sets_;
  std::vector<int> own_input_;
  Valuation inner_;
};

/// A monotone valuation given as a full 2^m table indexed by bitmask.
class ExplicitValuation {
 public:
  ExplicitValuation(int m, std::vector<double> values) : m_(m), values_(std::move(values)) {
    check_cap("explicit valuation", m, kDeskCap);
    if (values_.size() != (std::size_t{1} << m)) {
      throw ArityError("explicit: table has " + std::to_string(values_.size()) + " entries, expected 2^" +
                       std::to_string(m));
    }
    if (std::abs(values_[0]) > kTolerance) throw DomainError("explicit: v(empty) must be 0");
    for (ItemSet::Mask s = 0; s < values_.size(); ++s) {
      if (values_[s] < 0) throw DomainError("explicit: negative value");
      for (int j = 0; j < m; ++j) {
        const auto t = s | (ItemSet::Mask{1} << j);
        if (t != s && !approx_le(values_[s], values_[t])) {
          throw DomainError("explicit: not monotone at " + ItemSet(s).to_string() + " + item " + std::to_string(j));
        }
      }
    }
  }

  int num_items() const { return m_; }
  const std::vector<double>& values() const { return values_; }
  double value(ItemSet s) const { return values_[s.bits()]; }

  friend bool operator==(const ExplicitValuation&, const ExplicitValuation&) = default;

 private:
  int m_;
  std::vector<double> values_;
};

/// v_0(S) = the best welfare the member bidders reach using only items of S.
/// Precomputes the whole table in O(k·3^m).
class SurrogateValuation {
 public:
  SurrogateValuation(int m, std::vector<Valuation> members);

  int num_items() const { return m_; }
  const std::vector<Valuation>& members() const { return members_; }
  double value(ItemSet s) const { return dp_->best(s); }

  /// Welfare-optimal assignment of S among the members.
  std::vector<ItemSet> split(ItemSet s) const { return dp_->split(s); }

  friend bool operator==(const SurrogateValuation& a, const SurrogateValuation& b) {
    return a.m_ == b.m_ && a.members_ == b.members_;
  }

 private:
  int m_;
  std::vector<Valuation> members_;
  std::shared_ptr<const SuffixWelfareDp> dp_;
};

namespace detail {

using ValuationVariant = std::variant<SingleMinded, XosClauses, SetCoverSubadditive, OneTwoValuation,
                                      ComposedGridValuation, ExplicitValuation, SurrogateValuation>;

struct ValuationModel {
  ValuationVariant v;
};

inline ItemSet exhaustive_demand(const Valuation& v, std::span<const double> prices) {
  const int m = v.num_items();
  check_cap("exhaustive demand", m, kDeskCap);
  const std::size_t size = std::size_t{1} << m;
  std::vector<double> utility(size);
  double best = 0.0;
  for (ItemSet::Mask s = 0; s < size; ++s) {
    double price = 0.0;
    for (ItemSet::Mask b = s; b != 0; b &= b - 1) price += prices[std::countr_zero(b)];
    utility[s] = v.value(ItemSet(s)) - price;
    best = std::max(best, utility[s]);
  }
  for (ItemSet::Mask s = 0; s < size; ++s) {
    if (approx_le(best, utility[s])) return ItemSet(s);
  }
  return ItemSet{};
}

}  // namespace detail

template <class T>
  requires(!std::same_as<std::remove_cvref_t<T>, Valuation>)
Valuation::Valuation(T concrete)
    : model_(std::make_shared<const detail::ValuationModel>(detail::ValuationModel{std::move(concrete)})) {}

template <class T>
const T* Valuation::get_if() const {
  return std::get_if<T>(&model_->v);
}

template <class Fn>
decltype(auto) Valuation::visit(Fn&& fn) const {
  return std::visit(std::forward<Fn>(fn), model_->v);
}

inline double Valuation::value(ItemSet s) const {
  return std::visit([s](const auto& v) { return v.value(s); }, model_->v);
}

inline int Valuation::num_items() const {
  return std::visit([](const auto& v) { return v.num_items(); }, model_->v);
}

inline ValuationClass Valuation::kind() const {
  return static_cast<ValuationClass>(model_->v.index());
}

inline ItemSet Valuation::demand(std::span<const double> prices) const {
  if (static_cast<int>(prices.size()) != num_items()) throw ArityError("demand: price vector length != m");
  for (double p : prices) {
    if (p < 0) throw DomainError("demand: negative price");
  }
  if (const auto* xos = get_if<XosClauses>()) return xos->demand(prices);
  if (const auto* sm = get_if<SingleMinded>()) {
    double price = 0.0;
    for (int j : sm->bundle().items()) price += prices[j];
    return sm->weight() - price > kTolerance ? sm->bundle() : ItemSet{};
  }
  return detail::exhaustive_demand(*this, prices);
}

inline bool operator==(const Valuation& a, const Valuation& b) {
  return a.model_ == b.model_ || a.model_->v == b.model_->v;
}

inline ComposedGridValuation::ComposedGridValuation(int rows, int cols, double scale,
                                                    std::vector<ItemSet> column_sets,
                                                    std::vector<int> own_input, Valuation inner)
    : rows_(rows),
      cols_(cols),
      scale_(scale),
      column_sets_(std::move(column_sets)),
      own_input_(std::move(own_input)),
      inner_(std::move(inner)) {
  if (rows < 1 || cols < 1) throw ArityError("composed_grid: rows and cols must be positive");
  check_cap("composed_grid", rows * cols, 31);
  if (inner_.num_items() != rows) throw ArityError("composed_grid: inner valuation must be on `rows` items");
  if (scale < 0) throw DomainError("composed_grid: negative scale");
  for (ItemSet s : column_sets_) {
    if (!s.within(cols)) throw ArityError("composed_grid: column set out of range");
  }
  for (int l : own_input_) {
    if (l < 0 || l >= static_cast<int>(column_sets_.size())) throw ArityError("composed_grid: own_input index out of range");
  }
}

inline double ComposedGridValuation::value(ItemSet s) const {
  if (own_input_.empty()) return 0.0;
  std::vector<double> per_column(cols_);
  for (int j = 0; j < cols_; ++j) per_column[j] = inner_.value(project(s, j));
  double best = 0.0;
  for (int l : own_input_) {
    double sum = 0.0;
    for (int j : column_sets_[l].items()) sum += per_column[j];
    best = std::max(best, sum);
  }
  return scale_ * best;
}

inline bool operator==(const ComposedGridValuation& a, const ComposedGridValuation& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.scale_ == b.scale_ && a.column_sets_ == b.column_sets_ &&
         a.own_input_ == b.own_input_ && a.inner_ == b.inner_;
}

/// Full value table of v over all 2^m bundles.
inline std::vector<double> tabulate(const Valuation& v) {
  const int m = v.num_items();
  check_cap("tabulate", m, kDeskCap);
  if (const auto* e = v.get_if<ExplicitValuation>()) return e->values();
  std::vector<double> table(std::size_t{1} << m);
  for (ItemSet::Mask s = 0; s < table.size(); ++s) table[s] = v.value(ItemSet(s));
  return table;
}

inline SurrogateValuation::SurrogateValuation(int m, std::vector<Valuation> members)
    : m_(m), members_(std::move(members)) {
  check_cap("surrogate", m, kExactCap);
  std::vector<std::vector<double>> tables;
  tables.reserve(members_.size());
  for (const auto& v : members_) {
    if (v.num_items() != m) throw ArityError("surrogate: member defined on a different item count");
    tables.push_back(tabulate(v));
  }
  dp_ = std::make_shared<const SuffixWelfareDp>(tables, m);
}

/// Builds the surrogate bidder for a group of (succinct) bidders.
inline SurrogateValuation make_surrogate(int m, std::vector<Valuation> succinct) {
  return SurrogateValuation(m, std::move(succinct));
}

/// A pair (S, T) witnessing a violated property, if any.
struct PropertyViolation {
  ItemSet first;
  ItemSet second;
};

/// Exhaustive monotonicity check: v(S) ≤ v(S + j) for all S and j.
inline std::optional<PropertyViolation> find_monotonicity_violation(const Valuation& v) {
  const auto table = tabulate(v);
  const int m = v.num_items();
  for (ItemSet::Mask s = 0; s < table.size(); ++s) {
    for (int j = 0; j < m; ++j) {
      const auto t = s | (ItemSet::Mask{1} << j);
      if (!approx_le(table[s], table[t])) return PropertyViolation{ItemSet(s), ItemSet(t)};
    }
  }
  return std::nullopt;
}

/// Exhaustive subadditivity check over all pairs (4^m work).
inline std::optional<PropertyViolation> find_subadditivity_violation(const Valuation& v) {
  const auto table = tabulate(v);
  for (ItemSet::Mask s = 0; s < table.size(); ++s) {
    for (ItemSet::Mask t = s; t < table.size(); ++t) {
      if (!approx_le(table[s | t], table[s] + table[t])) return PropertyViolation{ItemSet(s), ItemSet(t)};
    }
  }
  return std::nullopt;
}

}  // namespace mixwel
