#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mixwel/model.hpp"
#include "mixwel/valuations.hpp"

namespace mixwel {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json items_to_json(ItemSet s) { return Json(s.items()); }

inline Json item_sets_to_json(const std::vector<ItemSet>& sets) {
  Json out = Json::array();
  for (ItemSet s : sets) out.push_back(items_to_json(s));
  return out;
}

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
  throw ParseError(path + ": " + msg);
}

inline const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

inline int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

inline double as_real(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

inline const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

inline std::vector<int> as_ints(const Json& j, const std::string& path) {
  std::vector<int> out;
  const auto& arr = as_array(j, path);
  for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(as_int(arr[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

inline ItemSet as_item_set(const Json& j, int m, const std::string& path) {
  ItemSet s;
  for (int item : as_ints(j, path)) {
    if (item < 0 || item >= m) {
      throw ArityError(path + ": item " + std::to_string(item) + " outside [0," + std::to_string(m) + ")");
    }
    s = s.with(item);
  }
  return s;
}

inline std::vector<ItemSet> as_item_sets(const Json& j, int m, const std::string& path) {
  std::vector<ItemSet> out;
  const auto& arr = as_array(j, path);
  for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(as_item_set(arr[k], m, path + "[" + std::to_string(k) + "]"));
  return out;
}

inline std::vector<double> as_reals(const Json& j, const std::string& path) {
  std::vector<double> out;
  const auto& arr = as_array(j, path);
  for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(as_real(arr[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

}  // namespace detail

inline Json valuation_to_json(const Valuation& v) {
  Json j;
  j["class"] = std::string(class_name(v.kind()));
  v.visit([&](const auto& c) {
    using T = std::decay_t<decltype(c)>;
    if constexpr (std::is_same_v<T, SingleMinded>) {
      j["weight"] = c.weight();
      j["bundle"] = detail::items_to_json(c.bundle());
    } else if constexpr (std::is_same_v<T, XosClauses>) {
      j["clauses"] = c.clauses();
    } else if constexpr (std::is_same_v<T, SetCoverSubadditive>) {
      j["lambda"] = c.lambda();
      j["cover_sets"] = detail::item_sets_to_json(c.cover_sets());
      if (c.scale() != 1.0) j["scale"] = c.scale();
    } else if constexpr (std::is_same_v<T, OneTwoValuation>) {
      Json parts = Json::array();
      for (const auto& p : c.partitions()) parts.push_back(detail::item_sets_to_json(p));
      j["partitions"] = parts;
      j["own_index"] = c.own_index();
      j["disj_input"] = c.disj_input();
    } else if constexpr (std::is_same_v<T, ComposedGridValuation>) {
      j["rows"] = c.rows();
      j["cols"] = c.cols();
      j["scale"] = c.scale();
      j["column_sets"] = detail::item_sets_to_json(c.column_sets());
      j["own_input"] = c.own_input();
      j["inner"] = valuation_to_json(c.inner());
    } else if constexpr (std::is_same_v<T, ExplicitValuation>) {
      j["values"] = c.values();
    } else if constexpr (std::is_same_v<T, SurrogateValuation>) {
      Json members = Json::array();
      for (const auto& member : c.members()) members.push_back(valuation_to_json(member));
      j["members"] = members;
    }
  });
  return j;
}

/// Parses one valuation record over m items. `m` is used only by classes
/// that do not carry their own size.
inline Valuation valuation_from_json(const Json& j, int m, const std::string& path) {
  using namespace detail;
  const Json& cls = field(j, "class", path);
  if (!cls.is_string()) fail(path + ".class", "expected a string");
  const auto kind = parse_class_name(cls.get<std::string>());
  if (!kind) fail(path + ".class", "unknown valuation class \"" + cls.get<std::string>() + "\"");
  try {
    switch (*kind) {
      case ValuationClass::kSingleMinded:
        return SingleMinded(m, as_real(field(j, "weight", path), path + ".weight"),
                            as_item_set(field(j, "bundle", path), m, path + ".bundle"));
      case ValuationClass::kXos: {
        std::vector<std::vector<double>> clauses;
        const auto& arr = as_array(field(j, "clauses", path), path + ".clauses");
        for (std::size_t k = 0; k < arr.size(); ++k) {
          clauses.push_back(as_reals(arr[k], path + ".clauses[" + std::to_string(k) + "]"));
        }
        return XosClauses(m, std::move(clauses));
      }
      case ValuationClass::kSubadditiveSetCover: {
        const double scale = j.contains("scale") ? as_real(j["scale"], path + ".scale") : 1.0;
        return SetCoverSubadditive(m, as_item_sets(field(j, "cover_sets", path), m, path + ".cover_sets"),
                                   as_int(field(j, "lambda", path), path + ".lambda"), scale);
      }
      case ValuationClass::kOneTwo: {
        std::vector<std::vector<ItemSet>> partitions;
        const auto& arr = as_array(field(j, "partitions", path), path + ".partitions");
        for (std::size_t k = 0; k < arr.size(); ++k) {
          partitions.push_back(as_item_sets(arr[k], m, path + ".partitions[" + std::to_string(k) + "]"));
        }
        return OneTwoValuation(m, std::move(partitions), as_int(field(j, "own_index", path), path + ".own_index"),
                               as_ints(field(j, "disj_input", path), path + ".disj_input"));
      }
      case ValuationClass::kComposedGrid: {
        const int rows = as_int(field(j, "rows", path), path + ".rows");
        const int cols = as_int(field(j, "cols", path), path + ".cols");
        if (rows * cols != m) {
          throw ArityError(path + ": rows*cols=" + std::to_string(rows * cols) + " != m=" + std::to_string(m));
        }
        return ComposedGridValuation(rows, cols, as_real(field(j, "scale", path), path + ".scale"),
                                     as_item_sets(field(j, "column_sets", path), cols, path + ".column_sets"),
                                     as_ints(field(j, "own_input", path), path + ".own_input"),
                                     valuation_from_json(field(j, "inner", path), rows, path + ".inner"));
      }
      case ValuationClass::kExplicit:
        return ExplicitValuation(m, as_reals(field(j, "values", path), path + ".values"));
      case ValuationClass::kSurrogate: {
        std::vector<Valuation> members;
        const auto& arr = as_array(field(j, "members", path), path + ".members");
        for (std::size_t k = 0; k < arr.size(); ++k) {
          members.push_back(valuation_from_json(arr[k], m, path + ".members[" + std::to_string(k) + "]"));
        }
        return SurrogateValuation(m, std::move(members));
      }
    }
  } catch (const ArityError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw ArityError(path + ": " + what);
  } catch (const DomainError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw DomainError(path + ": " + what);
  }
  fail(path, "unreachable");
}

inline Json instance_to_json(const Instance& inst) {
  Json j;
  j["m"] = inst.num_items();
  Json bidders = Json::array();
  for (const auto& v : inst.bidders()) bidders.push_back(valuation_to_json(v));
  j["bidders"] = bidders;
  if (const auto& p = inst.provenance()) {
    Json prov;
    prov["family"] = p->family;
    prov["params"] = Json::parse(p->params_json.empty() ? "{}" : p->params_json);
    prov["seed"] = p->seed;
    j["provenance"] = prov;
  }
  return j;
}

inline Instance instance_from_json(const Json& j) {
  using namespace detail;
  const int m = as_int(field(j, "m", "$"), "$.m");
  if (m < 1 || m > 31) fail("$.m", "item count must be in [1, 31]");
  const auto& arr = as_array(field(j, "bidders", "$"), "$.bidders");
  std::vector<Valuation> bidders;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    bidders.push_back(valuation_from_json(arr[k], m, "$.bidders[" + std::to_string(k) + "]"));
  }
  std::optional<Provenance> provenance;
  if (j.contains("provenance")) {
    const Json& p = j["provenance"];
    const Json& family = field(p, "family", "$.provenance");
    const Json& seed = field(p, "seed", "$.provenance");
    if (!family.is_string()) fail("$.provenance.family", "expected a string");
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) fail("$.provenance.seed", "expected an integer");
    provenance = Provenance{family.get<std::string>(), p.contains("params") ? p["params"].dump() : "{}",
                            seed.get<std::uint64_t>()};
  }
  return Instance(m, std::move(bidders), std::move(provenance));
}

inline std::string serialize(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

inline Instance parse_instance(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
  return instance_from_json(j);
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(path + ": cannot write");
  out << serialize(inst);
}

/// FNV-1a over the canonical serialization; tags result rows with the
/// instance they came from.
inline std::uint64_t instance_hash(const Instance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize(inst)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

}  // namespace mixwel
