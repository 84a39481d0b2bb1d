#pragma once

#include "cohomkit/fibrewise.hpp"
#include "cohomkit/fiso.hpp"
#include "cohomkit/koszul.hpp"
#include "cohomkit/strata.hpp"

#include <json.hpp>

#include <fstream>

namespace cohomkit::io {

using nlohmann::json;

/// Integers within int64 are JSON numbers, larger ones decimal strings.
inline json to_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw InvalidArgument("expected an integer, got " + j.dump());
}

inline json to_json(const IntVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline IntVector vector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidArgument("expected an array, got " + j.dump());
  IntVector out;
  for (const auto& x : j) out.push_back(integer_from_json(x));
  return out;
}

/// Row-major list of rows.
inline json to_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row_vector(r)));
  return out;
}

inline IntMatrix matrix_from_json(const json& j, std::optional<std::size_t> cols = std::nullopt) {
  if (!j.is_array()) throw InvalidArgument("expected a matrix, got " + j.dump());
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  const std::size_t width = rows.empty() ? cols.value_or(0) : rows.front().size();
  for (const auto& r : rows)
    if (r.size() != width) throw InvalidArgument("ragged matrix");
  return IntMatrix::from_rows(rows, width);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline json parse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(what + ": " + e.what());
  }
}

/// {"name": string, "generators": [[int, ...], ...]} in one-line image notation.
inline GroupPtr group_from_json(const json& j) {
  if (!j.is_object() || !j.contains("generators")) throw InvalidGroup("group JSON needs \"generators\"");
  std::vector<Permutation> perms;
  for (const auto& g : j.at("generators")) perms.push_back(g.get<Permutation>());
  return group_from_generators(perms, j.value("name", std::string("G")));
}

/// A built-in name or a path to a group file.
inline GroupPtr load_group(const std::string& source) {
  try {
    return groups::builtin(source);
  } catch (const InvalidGroup&) {
    std::ifstream probe(source);
    if (!probe) throw;
  }
  return group_from_json(parse(read_file(source), source));
}

inline json group_to_json(const FiniteGroup& g) {
  json out{{"name", g.label()}, {"order", g.order()}};
  json gens = json::array();
  for (const auto& p : g.generator_permutations()) gens.push_back(p);
  out["generators"] = gens;
  return out;
}

/// Action keys: "g<k>" for the k-th group generator, "g" alone for the first.
inline std::size_t generator_slot(const std::string& key, std::size_t count) {
  std::string digits = key;
  if (!digits.empty() && digits[0] == 'g') digits = digits.substr(1);
  if (digits.empty()) digits = "0";
  if (digits.find_first_not_of("0123456789") != std::string::npos) throw InvalidModule("bad action key " + key);
  const std::size_t slot = std::stoul(digits);
  if (slot >= count) throw InvalidModule("action key " + key + " names no generator");
  return slot;
}

/// {"base": "Z"|"Fp", "p": int?, "generators": int, "relations": [[int,...]],
///  "action": {"g0": [[...]], ...}}.
inline FGModule module_from_json(GroupPtr group, const json& j) {
  const std::string base = j.value("base", std::string("Z"));
  BaseRing ring;
  Integer p = 0;
  if (base == "Z") {
    ring = BaseRing::integers;
  } else if (base == "Fp") {
    ring = BaseRing::prime_field;
    if (!j.contains("p")) throw InvalidModule("base Fp needs \"p\"");
    p = integer_from_json(j.at("p"));
  } else if (base == "Q") {
    ring = BaseRing::rationals;
  } else {
    throw InvalidModule("unknown base " + base);
  }
  const std::size_t rank = j.at("generators").get<std::size_t>();
  std::vector<IntVector> relations;
  for (const auto& r : j.value("relations", json::array())) relations.push_back(vector_from_json(r));
  const std::size_t count = group->generators().size();
  std::vector<std::optional<IntMatrix>> slots(count);
  for (const auto& [key, m] : j.at("action").items()) slots[generator_slot(key, count)] = matrix_from_json(m, rank);
  std::vector<IntMatrix> acts;
  for (std::size_t s = 0; s < count; ++s) {
    if (!slots[s]) throw InvalidModule("no action given for generator g" + std::to_string(s));
    acts.push_back(*slots[s]);
  }
  return FGModule(group, ring, p, rank, std::move(relations), std::move(acts));
}

inline json module_to_json(const FGModule& m) {
  json out;
  out["base"] = m.base() == BaseRing::integers ? "Z" : m.base() == BaseRing::prime_field ? "Fp" : "Q";
  if (m.base() == BaseRing::prime_field) out["p"] = to_json(m.characteristic());
  out["generators"] = m.rank();
  json rel = json::array();
  for (const auto& r : m.relations()) rel.push_back(to_json(r));
  out["relations"] = rel;
  json act = json::object();
  for (std::size_t s = 0; s < m.generator_actions().size(); ++s) act["g" + std::to_string(s)] = to_json(m.generator_actions()[s]);
  out["action"] = act;
  return out;
}

/// Built-in modules (zg, z, aug, z/<m>, fp:<p> for the trivial F_p module) or a module file.
inline FGModule load_module(GroupPtr group, const std::string& source) {
  if (source == "zg") return modules::regular(group);
  if (source == "z") return modules::trivial(group);
  if (source == "aug") return modules::augmentation_ideal(group);
  if (source.rfind("z/", 0) == 0) return modules::trivial_cyclic(group, Integer(source.substr(2)));
  if (source.rfind("fp:", 0) == 0) return modules::trivial(group, BaseRing::prime_field, Integer(source.substr(3)));
  if (source.rfind("fpg:", 0) == 0) return modules::regular(group, BaseRing::prime_field, Integer(source.substr(4)));
  return module_from_json(group, parse(read_file(source), source));
}

inline json class_to_json(const CohomologyClass& x) {
  return {{"degree", x.degree}, {"modulus", x.modulus.str()}, {"cocycle", to_json(x.cocycle)}};
}

inline CohomologyClass class_from_json(GroupPtr group, const json& j) {
  return {std::move(group), j.at("degree").get<std::size_t>(), Modulus::parse(j.at("modulus").get<std::string>()),
          vector_from_json(j.at("cocycle"))};
}

inline json to_json(const CohomologyGroup& h) {
  json basis = json::array();
  for (const auto& b : h.basis) basis.push_back(to_json(b.cocycle));
  return {{"degree", h.degree},
          {"coefficients", h.modulus.str()},
          {"invariants", to_json(h.invariant_factors)},
          {"group_string", format_invariants(h.invariant_factors)},
          {"basis", basis}};
}

/// Per-degree dimensions and orders, and the structure constants in (a, i, b, j) order.
inline json to_json(const GradedRingSlice& s, bool with_basis = false) {
  json orders = json::array(), products = json::array();
  for (const auto& o : s.orders) orders.push_back(to_json(o));
  for (const auto& [key, c] : s.table) {
    const auto [a, i, b, j] = key;
    products.push_back({{"left", {a, i}}, {"right", {b, j}}, {"coords", to_json(c)}});
  }
  json out{{"label", s.label},
           {"coefficients", s.modulus.str()},
           {"max_degree", s.max_degree},
           {"dimensions", s.dimensions()},
           {"orders", orders},
           {"products", products}};
  if (with_basis) {
    json basis = json::array();
    for (const auto& deg : s.basis) {
      json row = json::array();
      for (const auto& b : deg) row.push_back(to_json(b.cocycle));
      basis.push_back(row);
    }
    out["basis"] = basis;
  }
  return out;
}

inline GradedRingSlice slice_from_json(const json& j) {
  GradedRingSlice s;
  s.label = j.at("label").get<std::string>();
  s.modulus = Modulus::parse(j.at("coefficients").get<std::string>());
  s.max_degree = j.at("max_degree").get<std::size_t>();
  for (const auto& o : j.at("orders")) s.orders.push_back(vector_from_json(o));
  for (const auto& p : j.at("products")) {
    const auto l = p.at("left").get<std::array<std::size_t, 2>>();
    const auto r = p.at("right").get<std::array<std::size_t, 2>>();
    s.table[{l[0], l[1], r[0], r[1]}] = vector_from_json(p.at("coords"));
  }
  return s;
}

inline json to_json(const RingMapSlice& f) {
  json maps = json::array();
  for (const auto& m : f.maps) maps.push_back({{"rows", m.rows()}, {"cols", m.cols()}, {"entries", to_json(m)}});
  return {{"source", to_json(f.source)}, {"target", to_json(f.target)}, {"maps", maps}};
}

inline RingMapSlice ring_map_from_json(const json& j) {
  RingMapSlice f{slice_from_json(j.at("source")), slice_from_json(j.at("target")), {}};
  for (const auto& m : j.at("maps")) {
    IntMatrix x = matrix_from_json(m.at("entries"), m.at("cols").get<std::size_t>());
    if (x.rows() != m.at("rows").get<std::size_t>()) x = IntMatrix(m.at("rows").get<std::size_t>(), m.at("cols").get<std::size_t>());
    f.maps.push_back(std::move(x));
  }
  return f;
}

inline json to_json(const FIsoReport& r) {
  json surj = json::array(), nil = json::array(), tk = json::array();
  for (const auto& w : r.surjectivity) {
    json e{{"degree", w.degree}, {"index", w.index}, {"found", w.found}, {"target", class_to_json(w.target)}};
    if (w.found) {
      e["coefficients"] = to_json(w.coefficients);
      e["integral"] = class_to_json(w.integral);
    }
    surj.push_back(e);
  }
  for (const auto& w : r.nilpotency)
    nil.push_back({{"degree", w.degree},
                   {"index", w.index},
                   {"order", to_json(w.order)},
                   {"reduces_to_zero", w.reduces_to_zero},
                   {"checked", w.checked},
                   {"exponent", w.exponent},
                   {"element", class_to_json(w.element)}});
  for (const auto& w : r.tensor_kernel)
    tk.push_back({{"degree", w.degree}, {"coefficients", to_json(w.coefficients)}, {"checked", w.checked}, {"vanishes", w.vanishes}});
  return {{"group", r.group},
          {"p", to_json(r.p)},
          {"s", r.s},
          {"max_degree", r.max_degree},
          {"surjectivity", surj},
          {"nilpotency", nil},
          {"tensor_kernel", tk},
          {"notes", r.notes},
          {"verdict", r.passed ? "pass" : "fail"}};
}

inline json to_json(const KappaCertificate& c) {
  json ker = json::array(), img = json::array();
  for (const auto& w : c.kernel)
    ker.push_back({{"degree", w.degree}, {"element", to_json(w.element)}, {"checked", w.checked}, {"nilpotent", w.nilpotent}});
  for (const auto& w : c.image) {
    json e{{"degree", w.degree}, {"index", w.index}};
    e["preimage"] = w.preimage ? to_json(*w.preimage) : json(nullptr);
    img.push_back(e);
  }
  return {{"kernel", ker}, {"image", img}, {"verdict", c.passed ? "pass" : "fail"}};
}

}  // namespace cohomkit::io
