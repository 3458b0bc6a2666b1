#pragma once

// JSON records for quivers, charges, extended-quiver specs, series tables and
// wall data, plus structured renderings of results. Numbers are integers or
// "p/q" strings; floating-point values are rejected.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qmmp/classifier.hpp"
#include "qmmp/geometry.hpp"
#include "qmmp/quiver.hpp"
#include "qmmp/rational.hpp"
#include "qmmp/series.hpp"
#include "qmmp/simples.hpp"
#include "qmmp/stability.hpp"

namespace qmmp::io {

using Json = nlohmann::ordered_json;

inline Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

inline const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw InputError(what + ": missing field '" + key + "'");
  return j.at(key);
}

inline std::int64_t as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InputError(what + ": expected an integer");
  return j.get<std::int64_t>();
}

inline std::string as_string(const Json& j, const std::string& what) {
  if (!j.is_string()) throw InputError(what + ": expected a string");
  return j.get<std::string>();
}

/// Integer or "p/q" string.
inline Rational as_rational(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const InputError& e) {
      throw InputError(what + ": " + e.what());
    }
  }
  throw InputError(what + ": expected an integer or a \"p/q\" string");
}

inline Json rational_json(const Rational& r) { return to_string(r); }

// ---------------------------------------------------------------------------
// Quivers and dimension vectors

inline Quiver parse_quiver(const Json& j) {
  const std::string what = "quiver";
  const Json& vs = field(j, "vertices", what);
  const Json& es = field(j, "edges", what);
  if (!vs.is_array() || !es.is_array()) throw InputError("quiver: vertices and edges must be lists");
  std::vector<VertexId> ids;
  for (const auto& v : vs) ids.push_back(as_string(v, "quiver vertex"));
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (const auto& e : es) {
    if (!e.is_array() || e.size() != 2) throw InputError("quiver: each edge is a [source, target] pair");
    edges.emplace_back(as_string(e[0], "edge source"), as_string(e[1], "edge target"));
  }
  return Quiver(std::move(ids), edges);
}

inline Json quiver_json(const Quiver& q) {
  Json j;
  j["vertices"] = q.vertices();
  Json es = Json::array();
  for (const auto& [s, t] : q.edge_list()) es.push_back({s, t});
  j["edges"] = es;
  return j;
}

/// "1,2" (positional, sorted vertex order) or "a=1,b=2" (by id; missing ids are 0).
inline DimVector parse_dim(const Quiver& q, const std::string& text) {
  if (text.empty()) throw InputError("empty dimension vector");
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  const bool keyed = text.find('=') != std::string::npos;
  auto number = [](const std::string& s) {
    if (!detail::is_integer_literal(s) || s[0] == '-') throw InputError("dimension entry '" + s + "' is not a nonnegative integer");
    return static_cast<std::int64_t>(detail::parse_integer(s));
  };
  if (!keyed) {
    if (parts.size() != q.size())
      throw InputError("dimension vector has " + std::to_string(parts.size()) + " entries, quiver has " +
                       std::to_string(q.size()) + " vertices");
    std::vector<std::int64_t> e;
    for (const auto& p : parts) e.push_back(number(p));
    return DimVector(std::move(e));
  }
  std::map<VertexId, std::int64_t> values;
  for (const auto& p : parts) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw InputError("mixed positional and keyed dimension entries");
    if (!values.emplace(p.substr(0, eq), number(p.substr(eq + 1))).second)
      throw InputError("vertex '" + p.substr(0, eq) + "' given twice");
  }
  return dim_vector(q, values);
}

/// [[id, re, im], ...] covering every vertex.
inline CentralCharge parse_charge(const Quiver& q, const Json& j) {
  const Json& list = j.is_object() ? field(j, "charge", "charge") : j;
  if (!list.is_array()) throw InputError("charge: expected a list of [vertex, re, im]");
  std::vector<std::optional<Gaussian>> vals(q.size());
  for (const auto& row : list) {
    if (!row.is_array() || row.size() != 3) throw InputError("charge: each entry is [vertex, re, im]");
    const auto i = q.index_of(as_string(row[0], "charge vertex"));
    if (vals[i]) throw InputError("charge: vertex '" + q.id(i) + "' given twice");
    vals[i] = Gaussian{as_rational(row[1], "charge re"), as_rational(row[2], "charge im")};
  }
  std::vector<Gaussian> out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!vals[i]) throw InputError("charge: no value for vertex '" + q.id(i) + "'");
    out.push_back(*vals[i]);
  }
  return CentralCharge(std::move(out));
}

inline std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const std::string s = text.substr(start, comma - start);
    if (!detail::is_integer_literal(s)) throw InputError("'" + s + "' is not an integer");
    out.push_back(static_cast<std::int64_t>(detail::parse_integer(s)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

/// {"base": quiver, "a": {id: n}, "b": {id: n}, "c": n, "framing": id}
inline ExtendedQuiverSpec parse_spec(const Json& j) {
  ExtendedQuiverSpec spec;
  spec.base = parse_quiver(field(j, "base", "spec"));
  auto mult = [&](const char* key) {
    const Json& m = field(j, key, "spec");
    if (!m.is_object()) throw InputError(std::string("spec: '") + key + "' must map vertex ids to counts");
    std::vector<std::int64_t> out(spec.base.size(), 0);
    for (const auto& [id, v] : m.items()) out[spec.base.index_of(id)] = as_int(v, std::string("spec ") + key);
    return out;
  };
  spec.a = mult("a");
  spec.b = mult("b");
  spec.c = j.contains("c") ? as_int(j.at("c"), "spec c") : 0;
  if (j.contains("framing")) spec.framing = as_string(j.at("framing"), "spec framing");
  return spec;
}

// ---------------------------------------------------------------------------
// Series tables

/// {"classes": [{"id": "C", "degree": "1"}, ...]}
inline ClassSet parse_classes(const Json& j) {
  const Json& list = field(j, "classes", "class set");
  if (!list.is_array() || list.empty()) throw InputError("class set: 'classes' must be a nonempty list");
  ClassSet cs;
  for (const auto& c : list) {
    cs.ids.push_back(as_string(field(c, "id", "class"), "class id"));
    cs.degrees.push_back(as_rational(field(c, "degree", "class"), "class degree"));
  }
  cs.validate();
  return cs;
}

inline TableRow parse_row(const Json& r, const std::string& what) {
  if (!r.is_array() || r.size() != 3) throw InputError(what + ": each row is [weight, n, value]");
  TableRow row;
  if (!r[0].is_array()) throw InputError(what + ": weight must be a list of integers");
  for (const auto& x : r[0]) row.beta.push_back(as_int(x, what + " weight"));
  row.n = as_int(r[1], what + " n");
  row.value = as_rational(r[2], what + " value");
  return row;
}

/// {"rows": [[weight, n, value], ...]}
inline SeriesTable parse_table(const Json& j, const ClassSet& classes, const std::string& what) {
  const Json& rows = field(j, "rows", what);
  if (!rows.is_array()) throw InputError(what + ": 'rows' must be a list");
  SeriesTable t;
  for (const auto& r : rows) {
    t.push_back(parse_row(r, what));
    classes.check(t.back().beta);
  }
  return t;
}

/// {"walls": [{"t": "1", "contributions": [[weight, n, N], ...]}, ...]}
inline std::vector<WallDatum> parse_walls(const Json& j, const ClassSet& classes) {
  const Json& list = field(j, "walls", "walls");
  if (!list.is_array()) throw InputError("walls: 'walls' must be a list");
  std::vector<WallDatum> out;
  for (const auto& w : list) {
    WallDatum wd;
    wd.t = as_rational(field(w, "t", "wall"), "wall t");
    const Json& cs = field(w, "contributions", "wall");
    if (!cs.is_array()) throw InputError("wall: 'contributions' must be a list");
    for (const auto& c : cs) wd.contributions.push_back(parse_row(c, "wall contribution"));
    validate_wall(wd, classes);
    out.push_back(std::move(wd));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Renderings

inline Json side_json(const SideDim& d) { return d ? Json(*d) : Json("empty"); }

inline Json class_json(const DiagramClass& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["k_relation"] = to_string(c.k_relation);
  j["reversed"] = c.reversed;
  Json cert = Json::array();
  for (const auto& [k, v] : c.certificate) cert.push_back({k, v});
  j["certificate"] = cert;
  if (c.dims)
    j["dims"] = {side_json(c.dims->first), side_json(c.dims->second)};
  else
    j["dims"] = nullptr;
  return j;
}

inline std::string class_text(const DiagramClass& c) {
  std::string s = std::string("kind: ") + to_string(c.kind) + "\nk_relation: " + to_string(c.k_relation) +
                  (c.reversed ? " (reversed)" : "") + "\n";
  if (c.dims) s += "dims: (" + to_string(c.dims->first) + ", " + to_string(c.dims->second) + ")\n";
  for (const auto& [k, v] : c.certificate) s += "  " + k + ": " + v + "\n";
  return s;
}

inline Json verdict_json(const Quiver& q, const SimpleVerdict& v) {
  Json j;
  j["exists"] = v.exists;
  j["certificate"] = to_string(v.certificate);
  j["detail"] = describe(q, v);
  if (v.vertex) j["vertex"] = q.id(*v.vertex);
  if (v.direction) j["direction"] = to_string(*v.direction);
  if (v.certificate == SimpleCertificate::DestabilizingVertex) j["pairing"] = v.pairing;
  if (v.unreachable) j["unreachable"] = {q.id(v.unreachable->first), q.id(v.unreachable->second)};
  if (v.certificate == SimpleCertificate::TypeI || v.certificate == SimpleCertificate::TypeMismatch)
    j["shape"] = to_string(v.shape);
  return j;
}

inline Json dim_json(const DimVector& m) { return m.entries(); }

inline Json wall_line_json(const WallLine& w) {
  Json j;
  j["r1"] = w.r1;
  j["k1"] = w.k1;
  j["n1"] = w.n1;
  j["coef_x"] = rational_json(w.coef_x);
  j["coef_y"] = rational_json(w.coef_y);
  j["rhs"] = rational_json(w.rhs);
  return j;
}

inline std::string linear_term(const Rational& c, const std::string& var, bool leading) {
  if (c == 0) return leading ? "0" + var : "";
  const bool neg = c < 0;
  const Rational a = neg ? Rational(-c) : c;
  std::string mag = a == 1 ? var : to_string(a) + var;
  if (leading) return (neg ? "-" : "") + mag;
  return (neg ? " - " : " + ") + mag;
}

inline std::string wall_line_text(const WallLine& w) {
  return linear_term(w.coef_x, "x", true) + linear_term(w.coef_y, "y", false) + " = " + to_string(w.rhs) + "  (r1=" +
         std::to_string(w.r1) + ", k1=" + std::to_string(w.k1) + ", n1=" + std::to_string(w.n1) + ")";
}

inline Json ladder_json(const WallLadder& l) {
  Json walls = Json::array();
  for (const auto& w : l.walls) {
    Json src = Json::array();
    for (const auto& [id, n] : w.sources) src.push_back({id, n});
    walls.push_back({{"t", rational_json(w.t)}, {"positive", w.positive()}, {"sources", src}});
  }
  return walls;
}

inline Json ledger_json(const MmpLedger& led) {
  Json j;
  j["chambers"] = led.chambers;
  Json steps = Json::array();
  for (const auto& s : led.steps) {
    Json st;
    st["t"] = rational_json(s.t);
    st["relation"] = s.relation;
    st["class"] = class_json(s.cls);
    st["strict"] = s.strict ? Json(*s.strict) : Json("unknown");
    steps.push_back(st);
  }
  j["steps"] = steps;
  j["chain"] = led.chain;
  return j;
}

inline Json series_json(const TruncatedSeries& s) {
  Json j;
  j["window"] = {s.n_min(), s.n_max()};
  j["t_cap"] = s.t_cap();
  Json rows = Json::array();
  for (const auto& [k, v] : s.terms()) rows.push_back({k.beta, k.n, rational_json(v)});
  j["rows"] = rows;
  return j;
}

}  // namespace qmmp::io
