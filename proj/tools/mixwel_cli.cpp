// mixwel: batch front end for generating, solving and certifying
// mixed-valuation welfare instances.
//
//   mixwel gen    --family F [params] [--out file]
//   mixwel solve  INSTANCE --alg A [--trials K]
//   mixwel exact  INSTANCE [--alpha 1|sa|a1,a2,...] [--unit u]
//   mixwel verify (INSTANCE | --family F [params])
//   mixwel bounds --family xos|sa [--n lo:hi]
//   mixwel ratio  (INSTANCE... | --family F --count K) --alg A
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mixwel/mixwel.hpp"

namespace {

using namespace mixwel;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Output rows

enum class Format { kCsv, kJsonLines };

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

class RowWriter {
 public:
  RowWriter(std::ostream& out, Format format, std::vector<std::string> columns)
      : out_(out), format_(format), columns_(std::move(columns)) {
    if (format_ == Format::kCsv) {
      for (std::size_t k = 0; k < columns_.size(); ++k) out_ << (k ? "," : "") << columns_[k];
      out_ << "\n";
    }
  }

  void row(const std::vector<Json>& cells) {
    if (format_ == Format::kCsv) {
      for (std::size_t k = 0; k < cells.size(); ++k) out_ << (k ? "," : "") << csv_cell(cells[k]);
      out_ << "\n";
      return;
    }
    Json j = Json::object();
    for (std::size_t k = 0; k < cells.size(); ++k) {
      j[columns_[k]] = cells[k].is_number_float() ? Json(std::stod(format_number(cells[k].get<double>()))) : cells[k];
    }
    out_ << j.dump() << "\n";
  }

 private:
  std::ostream& out_;
  Format format_;
  std::vector<std::string> columns_;
};

/// Destination for --out (stdout when empty).
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError(path + ": cannot write");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

// ---------------------------------------------------------------------------
// Options shared across subcommands

struct Options {
  std::uint64_t seed = 1;
  int trials = 1;
  int jobs = 1;
  std::string out;
  std::string format = "csv";
  std::string family;
  std::string mode = "zero_instance";
  std::string inner = "xos_unit";
  std::string alg = "xos_succ";
  std::string alpha = "1";
  std::string n_range = "2:150";
  std::string binomials = "exact";
  int n = 2;
  int c = 3;
  int r = 2;
  int m = 6;
  int z = 4;
  int count = 10;
  int sm = 2;
  std::optional<double> eps;
  std::optional<double> p;
  std::optional<int> t_star;
  double lambda = 1.0;
  double delta = 0.5;
  std::string unit = "auto";
  std::optional<int> cap_override;
  bool per_trial = false;
  std::vector<std::string> inputs;
};

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::kCsv;
  if (s == "json-lines") return Format::kJsonLines;
  throw UsageError("--format must be csv or json-lines");
}

ExactOptions exact_options(const Options& o) {
  ExactOptions e;
  if (o.cap_override) e.max_items = *o.cap_override;
  return e;
}

LpOptions lp_options(const Options& o) {
  LpOptions l;
  if (o.cap_override) l.max_items = *o.cap_override;
  return l;
}

std::function<double(int)> parse_alpha(const std::string& text) {
  if (text == "1") return [](int) { return 1.0; };
  if (text == "sa") return [](int t) { return 2.0 - 2.0 / (t + 1); };
  std::vector<double> table;
  std::stringstream in(text);
  for (std::string tok; std::getline(in, tok, ',');) {
    try {
      table.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw UsageError("--alpha: expected 1, sa, or a comma list of numbers");
    }
  }
  return [table](int t) {
    if (t < 1 || t > static_cast<int>(table.size())) throw UsageError("--alpha: no value for t = " + std::to_string(t));
    return table[t - 1];
  };
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError("--n: expected N or LO:HI");
  }
}

Instance generate(const Options& o, Seed seed) {
  const DisjMode mode = parse_disj_mode(o.mode);
  if (o.family == "grid") {
    GridParams p;
    p.n = o.n;
    p.c = o.c;
    p.r = o.r;
    p.eps = o.eps;
    p.lambda = o.lambda;
    p.z = o.z;
    p.inner = parse_inner_kind(o.inner);
    return gen_grid_instance(p, mode, seed);
  }
  if (o.family == "one_two") return gen_one_two_family(o.m, o.n, o.z, mode, seed).instance;
  if (o.family == "xos_partition") return gen_xos_partition_family(o.m, o.n, o.z, mode, seed).instance;
  if (o.family == "separation") {
    SeparationParams q;
    q.n = o.n;
    q.c = o.c;
    q.r = o.r;
    q.z = o.z;
    q.p = o.p.value_or(0.5);
    q.delta = o.delta;
    q.t_star = o.t_star.value_or(1);
    q.inner = parse_inner_kind(o.inner);
    return gen_separation_instance(q, mode, seed);
  }
  if (o.family == "unit_xos") return unit_xos_instance(o.n, o.m);
  if (o.family == "random_xos_sm") return random_mixed_instance(RandomFamily::kXosSm, o.m, o.n, o.sm, seed);
  if (o.family == "random_sa_sm") return random_mixed_instance(RandomFamily::kSaSm, o.m, o.n, o.sm, seed);
  throw UsageError("unknown --family \"" + o.family +
                   "\" (grid, one_two, xos_partition, separation, unit_xos, random_xos_sm, random_sa_sm)");
}

Instance load_one(const Options& o) {
  if (o.inputs.size() != 1) throw UsageError("expected exactly one instance file");
  return load_instance(o.inputs.front());
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_gen(const Options& o) {
  if (o.family.empty()) throw UsageError("gen: --family is required");
  const Instance inst = generate(o, Seed{o.seed});
  Sink sink(o.out);
  sink.stream() << serialize(inst);
  return kExitOk;
}

int cmd_solve(const Options& o) {
  const Instance inst = load_one(o);
  const AlgorithmId alg = parse_algorithm(o.alg);
  const std::string hash = hex64(instance_hash(inst));
  Sink sink(o.out);
  const Format fmt = parse_format(o.format);

  std::vector<double> welfare;
  std::vector<std::string> branches;
  std::optional<double> lp;
  switch (alg) {
    case AlgorithmId::kXosSucc: {
      const XosSuccPipeline pipeline(inst, lp_options(o));
      lp = pipeline.lp_value();
      welfare = run_trials(pipeline, o.trials, Seed{o.seed}, o.jobs);
      branches.assign(welfare.size(), "");
      break;
    }
    case AlgorithmId::kGiveAll:
    case AlgorithmId::kSaSucc:
    case AlgorithmId::kSaSuccHalf:
    case AlgorithmId::kExact: {
      AlgorithmReport rep;
      if (alg == AlgorithmId::kGiveAll) rep = give_all(inst);
      if (alg == AlgorithmId::kSaSucc) rep = sa_succ(inst, exact_subsolver, exact_options(o));
      if (alg == AlgorithmId::kSaSuccHalf) rep = sa_succ(inst, half_oracle_subsolver, exact_options(o));
      if (alg == AlgorithmId::kExact) {
        const Optimum opt = optimal_welfare(inst, exact_options(o));
        rep = AlgorithmReport{opt.witness, opt.welfare, "", std::nullopt};
      }
      welfare.assign(1, rep.welfare);
      branches.assign(1, rep.branch);
      break;
    }
  }

  if (o.per_trial) {
    RowWriter w(sink.stream(), fmt, {"version", "seed", "instance_hash", "alg", "trial", "welfare", "branch", "lp_value"});
    for (std::size_t k = 0; k < welfare.size(); ++k) {
      w.row({kVersion, o.seed, hash, o.alg, k, welfare[k], branches[k], lp ? Json(*lp) : Json()});
    }
    return kExitOk;
  }
  const Moments mo = moments(welfare);
  RowWriter w(sink.stream(), fmt,
              {"version", "seed", "instance_hash", "alg", "trials", "mean", "std_error", "lp_value", "branch"});
  w.row({kVersion, o.seed, hash, o.alg, welfare.size(), mo.mean, mo.std_error, lp ? Json(*lp) : Json(),
         branches.front()});
  return kExitOk;
}

/// Per-bidder value of a full solution. `auto` reads the provenance:
/// one_two instances are worth 2 per bidder, xos_partition ones m/n,
/// anything else 1.
double resolve_unit(const Options& o, const Instance& inst) {
  if (o.unit != "auto") {
    try {
      return std::stod(o.unit);
    } catch (const std::exception&) {
      throw UsageError("--unit: expected a number or auto");
    }
  }
  if (!inst.provenance()) return 1.0;
  if (inst.provenance()->family == "one_two") return 2.0;
  if (inst.provenance()->family == "xos_partition") {
    return static_cast<double>(inst.num_items()) / static_cast<double>(inst.num_bidders());
  }
  return 1.0;
}

int cmd_exact(const Options& o) {
  const Instance inst = load_one(o);
  const double unit = resolve_unit(o, inst);
  const GapReport rep = gap_welfare_decide(inst, parse_alpha(o.alpha), unit, exact_options(o));
  const std::string hash = hex64(instance_hash(inst));
  Sink sink(o.out);
  RowWriter w(sink.stream(), parse_format(o.format),
              {"version", "seed", "instance_hash", "row", "t", "welfare", "threshold", "verdict"});
  const std::string verdict(verdict_name(rep.verdict));
  w.row({kVersion, o.seed, hash, "optimum", inst.num_bidders(), rep.optimum, unit * inst.num_bidders(), verdict});
  for (std::size_t k = 0; k < rep.scarce.size(); ++k) {
    w.row({kVersion, o.seed, hash, "scarce", rep.scarce[k].t, rep.scarce[k].welfare, rep.thresholds[k], verdict});
  }
  return kExitOk;
}

/// Property checks on every bidder of an instance file.
int verify_instance(const Options& o) {
  const Instance inst = load_one(o);
  const std::string hash = hex64(instance_hash(inst));
  Sink sink(o.out);
  RowWriter w(sink.stream(), parse_format(o.format),
              {"version", "seed", "instance_hash", "bidder", "class", "check", "ok", "witness"});
  bool all_ok = true;
  for (std::size_t i = 0; i < inst.num_bidders(); ++i) {
    const Valuation& v = inst.bidder(i);
    const std::string cls(class_name(v.kind()));
    const auto mono = find_monotonicity_violation(v);
    all_ok = all_ok && !mono;
    w.row({kVersion, o.seed, hash, i, cls, "monotone", !mono,
           mono ? mono->first.to_string() + " " + mono->second.to_string() : ""});
    const bool sa_class = v.kind() == ValuationClass::kXos || v.kind() == ValuationClass::kSubadditiveSetCover ||
                          v.kind() == ValuationClass::kOneTwo;
    if (sa_class) {
      const auto sub = find_subadditivity_violation(v);
      all_ok = all_ok && !sub;
      w.row({kVersion, o.seed, hash, i, cls, "subadditive", !sub,
             sub ? sub->first.to_string() + " " + sub->second.to_string() : ""});
    }
  }
  return all_ok ? kExitOk : kExitVerify;
}

/// Generates a family and runs its paired verifier.
int verify_family(const Options& o) {
  Sink sink(o.out);
  RowWriter w(sink.stream(), parse_format(o.format), {"version", "seed", "family", "check", "ok", "value", "bound"});
  const Seed seed{o.seed};
  bool all_ok = true;
  auto emit = [&](const std::string& check, bool ok, double value, double bound) {
    all_ok = all_ok && ok;
    w.row({kVersion, o.seed, o.family, check, ok, value, bound});
  };
  if (o.family == "column_sets") {
    const int k = column_set_size(o.c, o.n, o.eps);
    const double eps = static_cast<double>(k) / o.c;
    const auto sets = sample_column_sets_eps(o.c, o.n, o.z, seed, eps);
    std::vector<double> deltas;
    for (int s = 0; s <= o.c; ++s) deltas.push_back(static_cast<double>(s) / o.c);
    const GatherReport rep = verify_gather_property(sets, o.c, o.n, eps, deltas, o.c <= 16, seed);
    for (const auto& g : rep.checks) emit("gather_delta_" + format_number(g.delta), g.ok, g.worst, g.bound);
  } else if (o.family == "one_two") {
    const FamilyInstance f = gen_one_two_family(o.m, o.n, o.z, DisjMode::kZeroInstance, seed);
    emit("intersecting_property", intersecting_property(f.family), f.family.attempts, 0);
    const ExactSolver solver(f.instance, exact_options(o));
    for (int t = 1; t <= o.n; ++t) {
      const double v = solver.scarce_optimum(t).welfare;
      emit("zero_scarce_t" + std::to_string(t), approx_le(v, t + 1.0), v, t + 1.0);
    }
    const FamilyInstance one = gen_one_two_family(o.m, o.n, o.z, DisjMode::kOneInstance, seed);
    const double opt = optimal_welfare(one.instance, exact_options(o)).welfare;
    emit("one_optimum", approx_eq(opt, 2.0 * o.n), opt, 2.0 * o.n);
  } else if (o.family == "xos_partition") {
    const FamilyInstance f = gen_xos_partition_family(o.m, o.n, o.z, DisjMode::kZeroInstance, seed);
    const UnionCheck u = verify_union_bound(f.family);
    emit("union_bound", u.ok, u.size, u.bound);
    const ExactSolver solver(f.instance, exact_options(o));
    for (int t = 1; t <= o.n; ++t) {
      const double v = solver.scarce_optimum(t).welfare;
      const double bound = xos_union_bound(o.m, o.n, t);
      emit("zero_scarce_t" + std::to_string(t), approx_le(v, bound), v, bound);
    }
  } else if (o.family == "bernoulli") {
    const double p = o.p.value_or(0.5);
    const auto sets = sample_bernoulli_sets(o.c, p, o.z, seed);
    const BernoulliReport rep = verify_bernoulli_sets(sets, o.c, p, o.delta, o.n);
    emit("sizes", rep.sizes_ok, rep.bad_set, 0);
    emit("intersections", rep.intersections_ok, rep.worst_count, rep.worst_bound);
  } else {
    throw UsageError("verify: unknown --family \"" + o.family + "\" (column_sets, one_two, xos_partition, bernoulli)");
  }
  return all_ok ? kExitOk : kExitVerify;
}

int cmd_verify(const Options& o) { return o.inputs.empty() ? verify_family(o) : verify_instance(o); }

int cmd_bounds(const Options& o) {
  Sink sink(o.out);
  RowWriter w(sink.stream(), parse_format(o.format), {"n", "p", "delta", "t_star", "beta", "target", "margin"});
  BinomialMode mode = BinomialMode::kExact;
  if (o.binomials == "java-int32") {
    mode = BinomialMode::kJavaInt32;
  } else if (o.binomials != "exact") {
    throw UsageError("--binomials must be exact or java-int32");
  }
  auto [lo, hi] = parse_range(o.n_range);
  if (o.family == "xos") {
    const double delta = o.delta == 0.5 ? 0.001 : o.delta;
    bool ok = true;
    for (int n = lo; n <= hi; ++n) {
      const double p = o.p.value_or(static_cast<double>(n) / (n + 1));
      const BetaResult b = beta_detail(BetaQuery{n, p, delta, o.t_star, mode}, OptProfile::xos(n));
      const double target = reference_ratios(n).xos_classic + delta;
      ok = ok && b.beta >= target;
      w.row({n, p, delta, b.t_star, b.beta, target, b.beta - target});
    }
    if (hi >= 150) {
      const double p = o.p.value_or(static_cast<double>(hi) / (hi + 1));
      const double b = beta(BetaQuery{hi, p, delta, o.t_star, mode}, OptProfile::xos(hi));
      const double target = e_over_e_minus_1() + delta;
      std::fprintf(stderr, "tail check n=%d: beta=%.7f e/(e-1)+delta=%.7f margin=%.7f %s\n", hi, b, target,
                   b - target, b >= target ? "PASS" : "FAIL");
      ok = ok && b >= target;
    }
    return ok ? kExitOk : kExitVerify;
  }
  if (o.family == "sa") {
    const double p = o.p.value_or(0.8);
    const double delta = o.delta == 0.5 ? 0.01 : o.delta;
    const BetaResult b = beta_detail(BetaQuery{3, p, delta, o.t_star, mode}, OptProfile::sa());
    const double target = reference_ratios(3).sa_classic;
    w.row({3, p, delta, b.t_star, b.beta, target, b.beta - target});
    return b.beta >= target ? kExitOk : kExitVerify;
  }
  throw UsageError("bounds: --family must be xos or sa");
}

int cmd_ratio(const Options& o) {
  const AlgorithmId alg = parse_algorithm(o.alg);
  std::vector<Instance> instances;
  if (!o.inputs.empty()) {
    for (const auto& path : o.inputs) instances.push_back(load_instance(path));
  } else {
    if (o.family.empty()) throw UsageError("ratio: give instance files or --family");
    for (int k = 0; k < o.count; ++k) instances.push_back(generate(o, derive_seed(Seed{o.seed}, k)));
  }
  Sink sink(o.out);
  RowWriter w(sink.stream(), parse_format(o.format),
              {"version", "seed", "instance_hash", "alg", "trials", "mean", "std_error", "opt", "ratio", "lp_value"});
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const Seed seed = derive_seed(Seed{o.seed}, 1000 + k);
    const RatioReport r = empirical_ratio(instances[k], alg, o.trials, seed, o.jobs);
    w.row({kVersion, seed.value, hex64(instance_hash(instances[k])), o.alg, r.trials, r.mean, r.std_error, r.optimum,
           r.ratio, r.lp_value ? Json(*r.lp_value) : Json()});
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Welfare maximization with mixed valuation classes"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Root seed")->capture_default_str();
    sub->add_option("--out", o.out, "Output file (default stdout)");
    sub->add_option("--format", o.format, "csv or json-lines")->capture_default_str();
    sub->add_option("--cap-override", o.cap_override, "Raise the item cap for exact/LP work (at most 24)");
  };
  auto family_params = [&](CLI::App* sub) {
    sub->add_option("--family", o.family, "Instance family");
    sub->add_option("--mode", o.mode, "one_instance or zero_instance")->capture_default_str();
    sub->add_option("--inner", o.inner, "Inner kind: xos_unit, one_two, set_cover")->capture_default_str();
    sub->add_option("--n", o.n, "Non-succinct bidders")->capture_default_str();
    sub->add_option("--c", o.c, "Columns")->capture_default_str();
    sub->add_option("--r", o.r, "Rows per column")->capture_default_str();
    sub->add_option("--m", o.m, "Items (partition and random families)")->capture_default_str();
    sub->add_option("--z", o.z, "Family size")->capture_default_str();
    sub->add_option("--sm", o.sm, "Single-minded bidders (random families)")->capture_default_str();
    sub->add_option("--eps", o.eps, "Column-set density override");
    sub->add_option("--lambda", o.lambda, "Grid value scale")->capture_default_str();
    sub->add_option("--p", o.p, "Bernoulli inclusion probability");
    sub->add_option("--delta", o.delta, "Deviation allowance")->capture_default_str();
    sub->add_option("--tstar", o.t_star, "Fixed t*");
  };

  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  common(gen);
  family_params(gen);

  auto* solve = app.add_subcommand("solve", "Run an algorithm on an instance");
  common(solve);
  solve->add_option("instance", o.inputs, "Instance file")->required();
  solve->add_option("--alg", o.alg, "give_all, sa_succ, sa_succ_half, xos_succ, exact")->capture_default_str();
  solve->add_option("--trials", o.trials, "Independent runs")->capture_default_str()->check(CLI::PositiveNumber);
  solve->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  solve->add_flag("--per-trial", o.per_trial, "One row per trial instead of a summary row");

  auto* exact = app.add_subcommand("exact", "Optimum, t-scarce table and gap verdict");
  common(exact);
  exact->add_option("instance", o.inputs, "Instance file")->required();
  exact->add_option("--alpha", o.alpha, "1, sa (2 - 2/(t+1)), or a comma list alpha(1),...")->capture_default_str();
  exact->add_option("--unit", o.unit, "Per-bidder value of a full solution, or auto")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Property checks for an instance or a generated family");
  common(verify);
  family_params(verify);
  verify->add_option("instance", o.inputs, "Instance file");

  auto* bounds = app.add_subcommand("bounds", "Separation bounds");
  common(bounds);
  bounds->add_option("--family", o.family, "xos or sa")->required();
  bounds->add_option("--n", o.n_range, "N or LO:HI")->capture_default_str();
  bounds->add_option("--p", o.p, "Fixed p (default n/(n+1) for xos, 0.8 for sa)");
  bounds->add_option("--delta", o.delta, "Slack (default 0.001 for xos, 0.01 for sa)");
  bounds->add_option("--tstar", o.t_star, "Fixed t*");
  bounds->add_option("--binomials", o.binomials, "exact or java-int32 (diagnostic)")->capture_default_str();

  auto* ratio = app.add_subcommand("ratio", "Empirical approximation ratios");
  common(ratio);
  family_params(ratio);
  ratio->add_option("instances", o.inputs, "Instance files");
  ratio->add_option("--alg", o.alg, "give_all, sa_succ, sa_succ_half, xos_succ, exact")->capture_default_str();
  ratio->add_option("--trials", o.trials, "Runs per instance")->capture_default_str()->check(CLI::PositiveNumber);
  ratio->add_option("--count", o.count, "Generated instances")->capture_default_str()->check(CLI::PositiveNumber);
  ratio->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (o.cap_override && (*o.cap_override < 1 || *o.cap_override > kDeskCap)) {
      throw UsageError("--cap-override must be in [1, " + std::to_string(kDeskCap) + "]");
    }
    if (o.cap_override) std::fprintf(stderr, "warning: item cap raised to %d; runs may be slow\n", *o.cap_override);
    if (*gen) return cmd_gen(o);
    if (*solve) return cmd_solve(o);
    if (*exact) return cmd_exact(o);
    if (*verify) return cmd_verify(o);
    if (*bounds) return cmd_bounds(o);
    if (*ratio) return cmd_ratio(o);
  } catch (const GeneratorFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitVerify;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitVerify;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    std::fprintf(stderr, "%s", app.help().c_str());
    return kExitUsage;
  }
  return kExitUsage;
}
