#pragma once

#include <cfenv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixwel/common.hpp"
#include "mixwel/item_set.hpp"
#include "mixwel/model.hpp"
#include "mixwel/random.hpp"
#include "mixwel/serialize.hpp"
#include "mixwel/set_cover.hpp"
#include "mixwel/valuations.hpp"

namespace mixwel {

inline constexpr int kDefaultRetries = 10000;

// ---------------------------------------------------------------------------
// Disjointness inputs

enum class DisjMode { kOneInstance, kZeroInstance };

inline std::string_view disj_mode_name(DisjMode d) {
  return d == DisjMode::kOneInstance ? "one_instance" : "zero_instance";
}

inline DisjMode parse_disj_mode(std::string_view s) {
  if (s == "one_instance" || s == "one") return DisjMode::kOneInstance;
  if (s == "zero_instance" || s == "zero") return DisjMode::kZeroInstance;
  throw DomainError("unknown instance mode \"" + std::string(s) + "\"");
}

struct DisjInput {
  int z = 0;
  DisjMode mode = DisjMode::kZeroInstance;
  std::vector<std::vector<int>> sets;  // X_1..X_n ⊆ [z], sorted
  std::optional<int> common;           // the shared index (one_instance)
};

namespace detail {

/// Splits `pool` into n contiguous blocks whose sizes differ by at most 1.
inline std::vector<std::vector<int>> contiguous_blocks(const std::vector<int>& pool, int n) {
  std::vector<std::vector<int>> out(n);
  const int total = static_cast<int>(pool.size());
  int at = 0;
  for (int i = 0; i < n; ++i) {
    const int len = total / n + (i < total % n ? 1 : 0);
    out[i].assign(pool.begin() + at, pool.begin() + at + len);
    at += len;
  }
  return out;
}

}  // namespace detail

/// zero_instance: [z] cut into n contiguous blocks. one_instance: a
/// uniformly random common index plus the remaining indices cut into
/// contiguous blocks.
inline DisjInput make_disj_input(int n, int z, DisjMode mode, Seed seed) {
  if (n < 1) throw DomainError("disjointness input: n must be >= 1");
  if (z < n && mode == DisjMode::kZeroInstance) throw DomainError("disjointness input: zero_instance needs z >= n");
  if (z < 1) throw DomainError("disjointness input: z must be >= 1");
  DisjInput d{z, mode, {}, std::nullopt};
  std::vector<int> pool;
  if (mode == DisjMode::kZeroInstance) {
    for (int l = 0; l < z; ++l) pool.push_back(l);
    d.sets = detail::contiguous_blocks(pool, n);
    return d;
  }
  Rng rng(seed);
  const int common = rng.below_int(z);
  for (int l = 0; l < z; ++l) {
    if (l != common) pool.push_back(l);
  }
  d.sets = detail::contiguous_blocks(pool, n);
  for (auto& x : d.sets) {
    x.push_back(common);
    std::sort(x.begin(), x.end());
  }
  d.common = common;
  return d;
}

inline bool disj_promise_holds(const DisjInput& d) {
  const int n = static_cast<int>(d.sets.size());
  if (d.mode == DisjMode::kOneInstance) {
    for (int l = 0; l < d.z; ++l) {
      bool everywhere = true;
      for (const auto& x : d.sets) everywhere = everywhere && std::find(x.begin(), x.end(), l) != x.end();
      if (everywhere) return true;
    }
    return false;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int l : d.sets[i]) {
        if (std::find(d.sets[j].begin(), d.sets[j].end(), l) != d.sets[j].end()) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Column sets of size εc

/// ε = n^{-1/3} unless overridden; εc is rounded half-to-even, at least 1.
inline int column_set_size(int c, int n, std::optional<double> eps = std::nullopt) {
  const double e = eps.value_or(std::cbrt(1.0 / n));
  if (!(e > 0.0 && e <= 1.0)) throw DomainError("column sets: eps must be in (0, 1]");
  const int saved = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const int k = static_cast<int>(std::nearbyint(e * c));
  std::fesetround(saved);
  return std::clamp(k, 1, c);
}

/// Includes each column w.p. ε/(1 − ε/4), resamples sets smaller than
/// εc and trims larger ones by dropping their highest columns.
inline std::vector<ItemSet> sample_column_sets_eps(int c, int n, int z, Seed seed,
                                                   std::optional<double> eps = std::nullopt,
                                                   int retries = kDefaultRetries) {
  if (c < 1 || c > 31 || z < 1) throw DomainError("column sets: need 1 <= c <= 31 and z >= 1");
  const int k = column_set_size(c, n, eps);
  const double e = static_cast<double>(k) / c;
  const double q = std::min(1.0, e / (1.0 - e / 4.0));
  Rng rng(seed);
  std::vector<ItemSet> sets;
  for (int l = 0; l < z; ++l) {
    std::vector<int> cols;
    for (int attempt = 0;; ++attempt) {
      if (attempt >= retries) throw GeneratorFailure("column sets: no set of size >= " + std::to_string(k));
      cols.clear();
      for (int j = 0; j < c; ++j) {
        if (rng.bernoulli(q)) cols.push_back(j);
      }
      if (static_cast<int>(cols.size()) >= k) break;
    }
    cols.resize(k);
    sets.push_back(ItemSet::from_items(cols));
  }
  return sets;
}

struct GatherCheck {
  double delta = 0.0;  // |S|/c actually used
  double worst = 0.0;  // max Σ_{ℓ∈L} |S ∩ S_ℓ|
  double bound = 0.0;  // (δ + 3ε)εnc
  ItemSet witness;
  bool ok = true;
};

struct GatherReport {
  std::vector<GatherCheck> checks;
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const GatherCheck& g) { return g.ok; });
  }
};

/// Checks Σ_{ℓ∈L} |S ∩ S_ℓ| ≤ (δ + 3ε)εnc over |S| = δc and |L| = n.
/// For a fixed S the best L takes the n largest overlaps, so only S is
/// enumerated (all of them when exhaustive, 10^4 samples otherwise).
inline GatherReport verify_gather_property(const std::vector<ItemSet>& sets, int c, int n, double eps,
                                           const std::vector<double>& deltas, bool exhaustive = true,
                                           Seed seed = Seed{0}) {
  if (exhaustive && c > 16) throw CapError("gather verification", c, 16);
  const int z = static_cast<int>(sets.size());
  GatherReport report;
  Rng rng(seed);
  for (double delta : deltas) {
    const int size = std::clamp(static_cast<int>(std::lround(delta * c)), 0, c);
    GatherCheck g;
    g.delta = static_cast<double>(size) / c;
    g.bound = (g.delta + 3.0 * eps) * eps * n * c;
    auto score = [&](ItemSet s) {
      std::vector<int> overlap;
      for (ItemSet t : sets) overlap.push_back((s & t).size());
      std::sort(overlap.rbegin(), overlap.rend());
      double sum = 0.0;
      for (int k = 0; k < std::min(n, z); ++k) sum += overlap[k];
      if (sum > g.worst) {
        g.worst = sum;
        g.witness = s;
      }
    };
    if (z >= n) {
      if (exhaustive) {
        for (ItemSet::Mask s = 0; s < (ItemSet::Mask{1} << c); ++s) {
          if (std::popcount(s) == size) score(ItemSet(s));
        }
      } else {
        std::vector<int> cols(c);
        for (int j = 0; j < c; ++j) cols[j] = j;
        for (int k = 0; k < 10000; ++k) {
          rng.shuffle(std::span<int>(cols));
          score(ItemSet::from_items(std::vector<int>(cols.begin(), cols.begin() + size)));
        }
      }
    }
    g.ok = approx_le(g.worst, g.bound);
    report.checks.push_back(g);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Partition families

struct PartitionFamily {
  int m = 0;
  int n = 0;
  std::vector<std::vector<ItemSet>> partitions;  // A_ℓ = (A_{ℓ,0}, …, A_{ℓ,n−1})
  int attempts = 0;                              // partitions drawn in total
};

inline std::vector<ItemSet> random_partition(int m, int n, Rng& rng) {
  std::vector<ItemSet::Mask> parts(n, 0);
  for (int j = 0; j < m; ++j) parts[rng.below_int(n)] |= ItemSet::Mask{1} << j;
  return std::vector<ItemSet>(parts.begin(), parts.end());
}

namespace detail {

inline bool pair_intersects(const std::vector<ItemSet>& a, const std::vector<ItemSet>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (i != j && !a[i].intersects(b[j])) return false;
    }
  }
  return true;
}

}  // namespace detail

/// A_{k,i} ∩ A_{ℓ,j} ≠ ∅ for all distinct i, j and distinct k, ℓ.
inline bool intersecting_property(const PartitionFamily& f) {
  for (std::size_t k = 0; k < f.partitions.size(); ++k) {
    for (std::size_t l = 0; l < f.partitions.size(); ++l) {
      if (k != l && !detail::pair_intersects(f.partitions[k], f.partitions[l])) return false;
    }
  }
  return true;
}

/// Partitions with the Intersecting Property and nonempty parts, drawn
/// one at a time: each new partition is resampled until it is compatible
/// with the ones already fixed, and the whole family restarts when a
/// partition exhausts its budget.
inline PartitionFamily sample_intersecting_family(int m, int n, int z, Seed seed, int retries = kDefaultRetries,
                                                  int restarts = 100) {
  check_cap("one_two family", m, 31);
  if (n < 1 || z < 1) throw DomainError("one_two family: need n >= 1 and z >= 1");
  if (n > m) throw DomainError("one_two family: needs n <= m for nonempty parts");
  Rng rng(seed);
  PartitionFamily f{m, n, {}, 0};
  for (int restart = 0; restart < restarts; ++restart) {
    f.partitions.clear();
    bool stuck = false;
    while (!stuck && static_cast<int>(f.partitions.size()) < z) {
      bool placed = false;
      for (int attempt = 0; attempt < retries && !placed; ++attempt) {
        ++f.attempts;
        auto a = random_partition(m, n, rng);
        if (std::any_of(a.begin(), a.end(), [](ItemSet s) { return s.empty(); })) continue;
        bool ok = true;
        for (const auto& b : f.partitions) ok = ok && detail::pair_intersects(a, b) && detail::pair_intersects(b, a);
        if (ok) {
          f.partitions.push_back(std::move(a));
          placed = true;
        }
      }
      stuck = !placed;
    }
    if (!stuck) return f;
  }
  throw GeneratorFailure("one_two family: no family with the Intersecting Property after " +
                         std::to_string(f.attempts) + " partition draws");
}

inline std::vector<Valuation> one_two_valuations(const PartitionFamily& f, const DisjInput& d) {
  if (static_cast<int>(d.sets.size()) != f.n) throw ArityError("one_two valuations: input arity != n");
  std::vector<Valuation> out;
  for (int i = 0; i < f.n; ++i) out.push_back(OneTwoValuation(f.m, f.partitions, i, d.sets[i]));
  return out;
}

struct FamilyInstance {
  PartitionFamily family;
  DisjInput input;
  Instance instance;
};

inline Json disj_to_json(const DisjInput& d) {
  Json j;
  j["mode"] = std::string(disj_mode_name(d.mode));
  j["z"] = d.z;
  j["sets"] = d.sets;
  return j;
}

inline FamilyInstance gen_one_two_family(int m, int n, int z, DisjMode mode, Seed seed,
                                         int retries = kDefaultRetries) {
  PartitionFamily f = sample_intersecting_family(m, n, z, derive_seed(seed, 0), retries);
  DisjInput d = make_disj_input(n, z, mode, derive_seed(seed, 1));
  Json params{{"m", m}, {"n", n}, {"z", z}, {"input", disj_to_json(d)}};
  Instance inst(m, one_two_valuations(f, d), Provenance{"one_two", params.dump(), seed.value});
  return FamilyInstance{std::move(f), std::move(d), std::move(inst)};
}

/// (1 − (1 − 1/n)^t)m + m^{3/4}.
inline double xos_union_bound(int m, int n, int t) {
  return (1.0 - std::pow(1.0 - 1.0 / n, t)) * m + std::pow(static_cast<double>(m), 0.75);
}

struct UnionCheck {
  bool ok = true;
  std::vector<int> bidders;  // T
  std::vector<int> indices;  // ℓ_i for i ∈ T
  int size = 0;              // |∪ A_{ℓ_i,i}|
  double bound = 0.0;
};

/// Checks |∪_{i∈T} A_{ℓ_i,i}| against xos_union_bound for every nonempty
/// T ⊆ [n] and every assignment of distinct indices ℓ_i. Returns the
/// first violation, or the tightest case when all pass.
inline UnionCheck verify_union_bound(const PartitionFamily& f) {
  const int z = static_cast<int>(f.partitions.size());
  UnionCheck tightest{true, {}, {}, 0, 0.0};
  double slack_min = INFINITY;
  for (std::uint32_t mask = 1; mask < (1u << f.n); ++mask) {
    std::vector<int> t;
    for (int i = 0; i < f.n; ++i) {
      if (mask >> i & 1u) t.push_back(i);
    }
    const int k = static_cast<int>(t.size());
    if (k > z) continue;
    const double bound = xos_union_bound(f.m, f.n, k);
    std::vector<int> idx(k, 0);
    while (true) {
      bool distinct = true;
      for (int a = 0; a < k && distinct; ++a) {
        for (int b = a + 1; b < k; ++b) distinct = distinct && idx[a] != idx[b];
      }
      if (distinct) {
        ItemSet u;
        for (int a = 0; a < k; ++a) u = u | f.partitions[idx[a]][t[a]];
        const double slack = bound - u.size();
        if (slack < slack_min) {
          slack_min = slack;
          tightest = UnionCheck{approx_le(u.size(), bound), t, idx, u.size(), bound};
          if (!tightest.ok) return tightest;
        }
      }
      int a = k - 1;
      while (a >= 0 && idx[a] == z - 1) idx[a--] = 0;
      if (a < 0) break;
      ++idx[a];
    }
  }
  return tightest;
}

inline std::vector<Valuation> xos_partition_valuations(const PartitionFamily& f, const DisjInput& d) {
  std::vector<Valuation> out;
  for (int i = 0; i < f.n; ++i) {
    std::vector<std::vector<double>> clauses;
    for (int l : d.sets[i]) {
      std::vector<double> c(f.m, 0.0);
      for (int j : f.partitions[l][i].items()) c[j] = 1.0;
      clauses.push_back(std::move(c));
    }
    if (clauses.empty()) clauses.push_back(std::vector<double>(f.m, 0.0));
    out.push_back(XosClauses(f.m, std::move(clauses)));
  }
  return out;
}

/// Uniform random partitions, resampled until verify_union_bound passes;
/// v_i(S) = max_{ℓ∈X_i} |S ∩ A_{ℓ,i}|.
inline FamilyInstance gen_xos_partition_family(int m, int n, int z, DisjMode mode, Seed seed,
                                               int retries = kDefaultRetries) {
  check_cap("xos partition family", m, 31);
  if (n < 1 || z < 1) throw DomainError("xos partition family: need n >= 1 and z >= 1");
  Rng rng(derive_seed(seed, 0));
  PartitionFamily f{m, n, {}, 0};
  for (int attempt = 0;; ++attempt) {
    if (attempt >= retries) throw GeneratorFailure("xos partition family: union bound never held");
    f.partitions.clear();
    for (int l = 0; l < z; ++l) f.partitions.push_back(random_partition(m, n, rng));
    f.attempts += z;
    if (verify_union_bound(f).ok) break;
  }
  DisjInput d = make_disj_input(n, z, mode, derive_seed(seed, 1));
  Json params{{"m", m}, {"n", n}, {"z", z}, {"input", disj_to_json(d)}};
  Instance inst(m, xos_partition_valuations(f, d), Provenance{"xos_partition", params.dump(), seed.value});
  return FamilyInstance{std::move(f), std::move(d), std::move(inst)};
}

// ---------------------------------------------------------------------------
// Small building blocks

/// n identical unit-demand XOS bidders on m items (one unit clause per item).
inline std::vector<Valuation> unit_xos_bidders(int n, int m) {
  std::vector<std::vector<double>> clauses;
  for (int j = 0; j < m; ++j) {
    std::vector<double> c(m, 0.0);
    c[j] = 1.0;
    clauses.push_back(std::move(c));
  }
  return std::vector<Valuation>(n, Valuation(XosClauses(m, clauses)));
}

inline Instance unit_xos_instance(int n, int m) {
  Json params{{"n", n}, {"m", m}};
  return Instance(m, unit_xos_bidders(n, m), Provenance{"unit_xos", params.dump(), 0});
}

/// `count` random sets over m items (each item w.p. q) whose union needs
/// more than λ of them; resampled until λ-sparse.
inline std::vector<ItemSet> sample_sparse_family(int m, int lambda, int count, double q, Seed seed,
                                                 int retries = kDefaultRetries) {
  Rng rng(seed);
  for (int attempt = 0; attempt < retries; ++attempt) {
    std::vector<ItemSet> family;
    for (int k = 0; k < count; ++k) {
      ItemSet s;
      while (s.empty()) {
        for (int j = 0; j < m; ++j) {
          if (rng.bernoulli(q)) s = s.with(j);
        }
      }
      family.push_back(s);
    }
    if (is_lambda_sparse(family, lambda, m)) return family;
  }
  throw GeneratorFailure("sparse family: no " + std::to_string(lambda) + "-sparse sample");
}

// ---------------------------------------------------------------------------
// Grid instances

enum class InnerKind { kXosUnit, kOneTwo, kSetCover };

inline std::string_view inner_kind_name(InnerKind k) {
  switch (k) {
    case InnerKind::kXosUnit: return "xos_unit";
    case InnerKind::kOneTwo: return "one_two";
    case InnerKind::kSetCover: return "set_cover";
  }
  return "?";
}

inline InnerKind parse_inner_kind(std::string_view s) {
  if (s == "xos_unit") return InnerKind::kXosUnit;
  if (s == "one_two") return InnerKind::kOneTwo;
  if (s == "set_cover") return InnerKind::kSetCover;
  throw DomainError("unknown inner kind \"" + std::string(s) + "\"");
}

/// Normalized inner profile t/α(t): the most welfare any t inner bidders
/// reach in one column of a zero-instance, in units where a full
/// one-instance column is worth n.
inline double inner_scarce_welfare(InnerKind k, int t) {
  if (t <= 0) return 0.0;
  switch (k) {
    case InnerKind::kXosUnit: return t;
    case InnerKind::kOneTwo: return (t + 1) / 2.0;
    case InnerKind::kSetCover: return t;  // partition form only, see inner_bidders
  }
  return t;
}

struct GridParams {
  int n = 2;
  int c = 3;
  int r = 2;
  std::optional<double> eps;  // default n^{-1/3}
  double lambda = 1.0;
  int z = 4;
  InnerKind inner = InnerKind::kXosUnit;
  int inner_z = 2;        // one_two: partitions per column family
  int set_cover_lambda = 2;
};

struct InnerBidders {
  std::vector<Valuation> valuations;  // one per outer bidder, on r items
  double normalization = 1.0;         // multiplies inner values so a full column is worth n
};

/// Inner per-column valuations. xos_unit: unit-demand XOS on r ≥ n rows.
/// one_two: a one-two family on the rows, with inputs of the same mode as
/// the outer instance. set_cover: f_X with the single set X̄_i for a
/// round-robin partition (X_i) of the rows, which is λ-sparse for every λ
/// and worth λ−1 on X_i.
inline InnerBidders inner_bidders(InnerKind kind, int n, int r, DisjMode mode, int inner_z, int sc_lambda,
                                  Seed seed) {
  InnerBidders out;
  switch (kind) {
    case InnerKind::kXosUnit:
      if (r < n) throw DomainError("grid: xos_unit inner needs r >= n");
      out.valuations = unit_xos_bidders(n, r);
      out.normalization = 1.0;
      break;
    case InnerKind::kOneTwo: {
      const PartitionFamily f = sample_intersecting_family(r, n, inner_z, derive_seed(seed, 0));
      const DisjInput d = make_disj_input(n, inner_z, mode, derive_seed(seed, 1));
      out.valuations = one_two_valuations(f, d);
      out.normalization = 0.5;
      break;
    }
    case InnerKind::kSetCover: {
      if (r < n) throw DomainError("grid: set_cover inner needs r >= n");
      const ItemSet rows = ItemSet::full(r);
      for (int i = 0; i < n; ++i) {
        ItemSet part;
        for (int row = i; row < r; row += n) part = part.with(row);
        out.valuations.push_back(SetCoverSubadditive(r, {rows - part}, sc_lambda));
      }
      out.normalization = 1.0 / (sc_lambda - 1);
      break;
    }
  }
  return out;
}

inline Json grid_params_json(const GridParams& p, const DisjInput& d, int eps_c) {
  Json j;
  j["n"] = p.n;
  j["c"] = p.c;
  j["r"] = p.r;
  j["eps_c"] = eps_c;
  j["lambda"] = p.lambda;
  j["z"] = p.z;
  j["inner"] = std::string(inner_kind_name(p.inner));
  j["input"] = disj_to_json(d);
  return j;
}

/// Items R × C with item = col·r + row. Bidders 0..n−1 are composed grid
/// bidders λ·norm·max_{ℓ∈X_i} Σ_{j∈S_ℓ} f_i(S ∩ column j); bidders n..n+c−1
/// are single-minded on one whole column each, with weight εn.
inline Instance gen_grid_instance(const GridParams& p, DisjMode mode, Seed seed) {
  if (p.n < 1 || p.c < 1 || p.r < 1) throw DomainError("grid: n, c, r must be positive");
  check_cap("grid", p.r * p.c, 31);
  if (p.z < p.n) throw DomainError("grid: needs z >= n");
  if (!(p.lambda >= 1.0)) throw DomainError("grid: lambda must be >= 1");
  const int eps_c = column_set_size(p.c, p.n, p.eps);
  const double eps = static_cast<double>(eps_c) / p.c;
  const auto sets = sample_column_sets_eps(p.c, p.n, p.z, derive_seed(seed, 0), eps);
  const DisjInput d = make_disj_input(p.n, p.z, mode, derive_seed(seed, 1));
  const InnerBidders inner = inner_bidders(p.inner, p.n, p.r, mode, p.inner_z, p.set_cover_lambda, derive_seed(seed, 2));
  const int m = p.r * p.c;

  std::vector<Valuation> bidders;
  for (int i = 0; i < p.n; ++i) {
    bidders.push_back(ComposedGridValuation(p.r, p.c, p.lambda * inner.normalization, sets, d.sets[i],
                                            inner.valuations[i]));
  }
  for (int j = 0; j < p.c; ++j) {
    bidders.push_back(SingleMinded(m, eps * p.n, ItemSet(ItemSet::full(p.r).bits() << (j * p.r))));
  }
  return Instance(m, std::move(bidders), Provenance{"grid", grid_params_json(p, d, eps_c).dump(), seed.value});
}

// ---------------------------------------------------------------------------
// Separation instances

inline std::vector<ItemSet> sample_bernoulli_sets(int c, double p, int z, Rng& rng) {
  std::vector<ItemSet> sets;
  for (int l = 0; l < z; ++l) {
    ItemSet s;
    for (int j = 0; j < c; ++j) {
      if (rng.bernoulli(p)) s = s.with(j);
    }
    sets.push_back(s);
  }
  return sets;
}

inline std::vector<ItemSet> sample_bernoulli_sets(int c, double p, int z, Seed seed) {
  Rng rng(seed);
  return sample_bernoulli_sets(c, p, z, rng);
}

struct BernoulliReport {
  bool sizes_ok = true;
  bool intersections_ok = true;
  int bad_set = -1;                  // first set with an out-of-range size
  std::vector<int> bad_k, bad_l;     // first violating (K, L)
  int worst_count = 0;
  double worst_bound = 0.0;
  bool ok() const { return sizes_ok && intersections_ok; }
};

/// |S_ℓ| ∈ [(1−δ)pc, (1+δ)pc] for all ℓ, and for all disjoint K, L ⊆ [z]
/// with |K| + |L| = n: |∩_K S̄_ℓ ∩ ∩_L S_ℓ| ≤ (1+δ)(1−p)^{|K|} p^{|L|} c.
inline BernoulliReport verify_bernoulli_sets(const std::vector<ItemSet>& sets, int c, double p, double delta, int n) {
  BernoulliReport rep;
  const int z = static_cast<int>(sets.size());
  for (int l = 0; l < z; ++l) {
    const int s = sets[l].size();
    if (!approx_le((1 - delta) * p * c, s) || !approx_le(s, (1 + delta) * p * c)) {
      rep.sizes_ok = false;
      if (rep.bad_set < 0) rep.bad_set = l;
    }
  }
  if (n > z) return rep;
  const ItemSet all = ItemSet::full(c);
  // Choose an n-subset of [z], then split it into K and L by a mask.
  std::vector<int> combo(n);
  for (int k = 0; k < n; ++k) combo[k] = k;
  while (true) {
    for (std::uint32_t lmask = 0; lmask < (1u << n); ++lmask) {
      ItemSet cell = all;
      int nl = 0;
      for (int k = 0; k < n; ++k) {
        if (lmask >> k & 1u) {
          cell = cell & sets[combo[k]];
          ++nl;
        } else {
          cell = cell & sets[combo[k]].complement(c);
        }
      }
      const double bound = (1 + delta) * std::pow(1 - p, n - nl) * std::pow(p, nl) * c;
      if (cell.size() > rep.worst_count || !approx_le(cell.size(), bound)) {
        rep.worst_count = std::max(rep.worst_count, cell.size());
        rep.worst_bound = bound;
      }
      if (!approx_le(cell.size(), bound) && rep.intersections_ok) {
        rep.intersections_ok = false;
        for (int k = 0; k < n; ++k) ((lmask >> k & 1u) ? rep.bad_l : rep.bad_k).push_back(combo[k]);
      }
    }
    int k = n - 1;
    while (k >= 0 && combo[k] == z - n + k) --k;
    if (k < 0) break;
    ++combo[k];
    for (int q = k + 1; q < n; ++q) combo[q] = combo[q - 1] + 1;
  }
  return rep;
}

/// Bernoulli(p) column sets resampled until verify_bernoulli_sets passes.
inline std::vector<ItemSet> sample_verified_bernoulli_sets(int c, double p, int z, double delta, int n, Seed seed,
                                                           int retries = kDefaultRetries) {
  Rng rng(seed);
  for (int attempt = 0; attempt < retries; ++attempt) {
    auto sets = sample_bernoulli_sets(c, p, z, rng);
    if (verify_bernoulli_sets(sets, c, p, delta, n).ok()) return sets;
  }
  throw GeneratorFailure("bernoulli sets: verifier failed " + std::to_string(retries) + " times");
}

struct SeparationParams {
  int n = 2;
  int c = 3;
  int r = 2;
  int z = 4;
  double p = 0.5;
  double delta = 0.5;
  int t_star = 1;
  InnerKind inner = InnerKind::kXosUnit;
  int inner_z = 2;
};

/// Column sets from verified Bernoulli(p) samples; bidders 0..n−1 are
/// max_{ℓ∈X_i} Σ_{j∈S_ℓ} f_i(S ∩ column j) with inner values normalized to
/// n per full column; bidders n..n+c−1 want a whole column with weight
/// t*/α(t*). Inner and outer inputs share the mode.
inline Instance gen_separation_instance(const SeparationParams& q, DisjMode mode, Seed seed) {
  if (q.n < 1 || q.c < 1 || q.r < 1) throw DomainError("separation: n, c, r must be positive");
  if (q.t_star < 1 || q.t_star > q.n) throw DomainError("separation: t* must be in [1, n]");
  if (q.inner == InnerKind::kSetCover) throw DomainError("separation: inner kind must be xos_unit or one_two");
  if (q.z < q.n) throw DomainError("separation: needs z >= n");
  check_cap("separation", q.r * q.c, 31);
  const auto sets = sample_verified_bernoulli_sets(q.c, q.p, q.z, q.delta, q.n, derive_seed(seed, 0));
  const DisjInput d = make_disj_input(q.n, q.z, mode, derive_seed(seed, 1));
  const InnerBidders inner = inner_bidders(q.inner, q.n, q.r, mode, q.inner_z, 2, derive_seed(seed, 2));
  const int m = q.r * q.c;
  const double weight = inner_scarce_welfare(q.inner, q.t_star);

  std::vector<Valuation> bidders;
  for (int i = 0; i < q.n; ++i) {
    bidders.push_back(ComposedGridValuation(q.r, q.c, inner.normalization, sets, d.sets[i], inner.valuations[i]));
  }
  for (int j = 0; j < q.c; ++j) {
    bidders.push_back(SingleMinded(m, weight, ItemSet(ItemSet::full(q.r).bits() << (j * q.r))));
  }
  Json params{{"n", q.n},         {"c", q.c},         {"r", q.r},
              {"z", q.z},         {"p", q.p},         {"delta", q.delta},
              {"t_star", q.t_star}, {"inner", std::string(inner_kind_name(q.inner))}, {"input", disj_to_json(d)}};
  return Instance(m, std::move(bidders), Provenance{"separation", params.dump(), seed.value});
}

// ---------------------------------------------------------------------------
// Random mixed instances

inline XosClauses random_xos(int m, int clauses, Rng& rng) {
  std::vector<std::vector<double>> cs(clauses, std::vector<double>(m));
  for (auto& c : cs) {
    for (auto& x : c) x = rng.bernoulli(0.6) ? std::round(rng.uniform01() * 40.0) / 10.0 : 0.0;
  }
  return XosClauses(m, std::move(cs));
}

inline SingleMinded random_single_minded(int m, Rng& rng) {
  ItemSet s;
  while (s.empty()) {
    for (int j = 0; j < m; ++j) {
      if (rng.bernoulli(0.35)) s = s.with(j);
    }
  }
  return SingleMinded(m, 1.0 + std::round(rng.uniform01() * 50.0) / 10.0, s);
}

/// f_X with a sampled λ-sparse family (λ ∈ {2, 4}), scaled by a random
/// weight.
inline SetCoverSubadditive random_set_cover(int m, Rng& rng) {
  const int lambda = rng.bernoulli(0.5) ? 2 : 4;
  const int count = lambda == 2 ? 2 + rng.below_int(3) : 5 + rng.below_int(3);
  const auto family = sample_sparse_family(m, lambda, count, lambda == 2 ? 0.35 : 0.2, Seed{rng.next_u64()});
  return SetCoverSubadditive(m, family, lambda, 1.0 + std::round(rng.uniform01() * 20.0) / 10.0);
}

enum class RandomFamily { kXosSm, kSaSm };

/// `other` XOS or f_X bidders followed by `sm` single-minded bidders.
inline Instance random_mixed_instance(RandomFamily family, int m, int other, int sm, Seed seed) {
  Rng rng(seed);
  std::vector<Valuation> bidders;
  for (int i = 0; i < other; ++i) {
    if (family == RandomFamily::kXosSm) {
      bidders.push_back(random_xos(m, 1 + rng.below_int(3), rng));
    } else {
      bidders.push_back(random_set_cover(m, rng));
    }
  }
  for (int i = 0; i < sm; ++i) bidders.push_back(random_single_minded(m, rng));
  Json params{{"m", m}, {"other", other}, {"single_minded", sm}};
  return Instance(m, std::move(bidders),
                  Provenance{family == RandomFamily::kXosSm ? "random_xos_sm" : "random_sa_sm", params.dump(),
                             seed.value});
}

}  // namespace mixwel
