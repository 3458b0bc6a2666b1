#pragma once

// Command-line front end. run() parses argv, dispatches to the library and
// writes one report to `out`; diagnostics go to `err`.
//
// Exit codes: 0 success, 1 negative boolean verdict, 2 input error,
// 3 precondition violation (including refused enumeration budgets).

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qmmp/classifier.hpp"
#include "qmmp/geometry.hpp"
#include "qmmp/io.hpp"
#include "qmmp/rep_oracle.hpp"
#include "qmmp/series.hpp"
#include "qmmp/simples.hpp"
#include "qmmp/stability.hpp"

namespace qmmp::cli {

using io::Json;

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kPrecondition = 3 };

struct Warning {
  std::string code;
  std::string message;
};

struct RunReport {
  std::string command;
  std::string digest;
  Json result = Json::object();
  std::string text;
  std::vector<Warning> warnings;
  int exit_code = kOk;
};

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& data, std::uint64_t h = 14695981039346656037ull) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

class Context {
 public:
  std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    inputs_.push_back(s.str());
    return inputs_.back();
  }
  Json read_json(const std::string& path) { return io::parse_json(read(path), path); }
  const std::vector<std::string>& inputs() const { return inputs_; }

 private:
  std::vector<std::string> inputs_;
};

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

inline std::string dim_text(const DimVector& m) { return to_string(m); }

// ---------------------------------------------------------------------------
// walls

struct WallsArgs {
  std::string quiver, dim, charge;
};

inline void cmd_walls(const WallsArgs& a, Context& ctx, RunReport& rep) {
  const Quiver q = io::parse_quiver(ctx.read_json(a.quiver));
  const DimVector m = io::parse_dim(q, a.dim);
  std::optional<CentralCharge> xi;
  if (!a.charge.empty()) xi = io::parse_charge(q, ctx.read_json(a.charge));
  const auto report = wall_report(m, xi);
  Json walls = Json::array();
  std::ostringstream t;
  t << "dimension vector " << dim_text(m) << " over vertices";
  for (const auto& v : q.vertices()) t << " " << v;
  t << "\nwalls: " << report.size() << " (expected " << expected_wall_count(m) << ")\n";
  for (std::size_t i = 0; i < report.size(); ++i) {
    const auto& s = report[i];
    Json w;
    w["m1"] = io::dim_json(s.wall.m1);
    w["m2"] = io::dim_json(s.wall.m2);
    t << "  [" << i << "] " << dim_text(s.wall.m1) << " + " << dim_text(s.wall.m2);
    if (s.on_wall) {
      w["on_wall"] = *s.on_wall;
      w["side"] = *s.side;
      t << "  on_wall=" << yes_no(*s.on_wall) << " side=" << *s.side;
    }
    w["coincides_with"] = s.coincides_with;
    if (!s.coincides_with.empty()) {
      t << "  (same locus as";
      for (auto j : s.coincides_with) t << " [" << j << "]";
      t << ")";
    }
    t << "\n";
    walls.push_back(w);
  }
  rep.result["dim"] = io::dim_json(m);
  rep.result["count"] = report.size();
  rep.result["expected_count"] = expected_wall_count(m);
  rep.result["walls"] = walls;
  rep.text = t.str();
}

// ---------------------------------------------------------------------------
// simples

struct SimplesArgs {
  std::string quiver, dim;
};

inline void cmd_simples(const SimplesArgs& a, Context& ctx, RunReport& rep) {
  const Quiver q = io::parse_quiver(ctx.read_json(a.quiver));
  const DimVector m = io::parse_dim(q, a.dim);
  const SimpleVerdict v = has_simple(q, m);
  rep.result = io::verdict_json(q, v);
  std::ostringstream t;
  t << "simple representation of dimension " << dim_text(m) << ": " << (v.exists ? "exists" : "none") << "\n";
  t << "certificate: " << describe(q, v) << "\n";
  if (v.exists) {
    rep.result["expected_stable_dim"] = expected_stable_dim(q, m);
    t << "expected stable dimension: " << expected_stable_dim(q, m) << "\n";
  }
  rep.text = t.str();
  rep.exit_code = v.exists ? kOk : kNegative;
}

// ---------------------------------------------------------------------------
// classify

struct ClassifyArgs {
  bool flop = false;
  bool flip = false;
  std::vector<std::int64_t> two_vertex;
  std::vector<std::int64_t> irreducible;
  std::optional<std::int64_t> c;
  bool minimal_wall = false;
  std::string quiver, spec, dim;
};

inline void cmd_classify(const ClassifyArgs& a, Context& ctx, RunReport& rep) {
  const int modes = int(a.flop) + int(a.flip) + int(!a.two_vertex.empty()) + int(!a.irreducible.empty());
  if (modes != 1) throw InputError("choose exactly one of --flop, --flip, --two-vertex, --irreducible");
  DiagramClass cls;
  std::string mode;
  if (a.flop) {
    mode = "flop";
    if (a.quiver.empty() || a.dim.empty()) throw InputError("--flop needs --quiver and --dim");
    const Quiver q = io::parse_quiver(ctx.read_json(a.quiver));
    cls = classify_symmetric_flop(q, io::parse_dim(q, a.dim));
  } else if (a.flip) {
    mode = "flip";
    if (a.spec.empty() || a.dim.empty()) throw InputError("--flip needs --spec and --dim");
    const ExtendedQuiverSpec spec = io::parse_spec(ctx.read_json(a.spec));
    const DimVector m = io::parse_dim(spec.base, a.dim);
    cls = classify_extended_flip(spec, m);
    if (a.minimal_wall) rep.result["strict_sufficient"] = is_strict_sufficient(spec, m, true);
  } else if (!a.two_vertex.empty()) {
    mode = "two-vertex";
    cls = classify_two_vertex(a.two_vertex[0], a.two_vertex[1]);
    if (a.c) {
      const auto d = local_model_dims(a.two_vertex[0], a.two_vertex[1], *a.c);
      rep.result["local_model_dims"] = {d.first, d.second};
    }
  } else {
    mode = "irreducible";
    cls = classify_irreducible_wall(a.irreducible[0], a.irreducible[1]);
  }
  rep.result["mode"] = mode;
  rep.result["classification"] = io::class_json(cls);
  std::ostringstream t;
  t << "mode: " << mode << "\n" << io::class_text(cls);
  if (rep.result.contains("strict_sufficient"))
    t << "strict (sufficient condition): " << yes_no(rep.result["strict_sufficient"].get<bool>()) << "\n";
  if (rep.result.contains("local_model_dims"))
    t << "local model dims: (" << rep.result["local_model_dims"][0].get<std::int64_t>() << ", "
      << rep.result["local_model_dims"][1].get<std::int64_t>() << ")\n";
  rep.text = t.str();
}

// ---------------------------------------------------------------------------
// series

struct SeriesArgs {
  std::string classes, n_table, l_table, walls, table;
  std::int64_t e = 1;
  std::int64_t qmin = -8, qmax = 8, t_cap = 2;
  bool invert = false;
};

inline std::string series_text(const TruncatedSeries& s) {
  std::ostringstream t;
  t << "window q^" << s.n_min() << "..q^" << s.n_max() << ", t_cap " << s.t_cap() << "\n";
  for (const auto& line : dump_lines(s)) t << "  " << line << "\n";
  return t.str();
}

inline ClassSet need_classes(const SeriesArgs& a, Context& ctx) {
  if (a.classes.empty()) throw InputError("--classes is required");
  return io::parse_classes(ctx.read_json(a.classes));
}

inline SeriesTable need_table(const std::string& path, const char* flag, const ClassSet& cs, Context& ctx) {
  if (path.empty()) throw InputError(std::string(flag) + " is required");
  return io::parse_table(ctx.read_json(path), cs, flag);
}

inline void cmd_series(const std::string& action, const SeriesArgs& a, Context& ctx, RunReport& rep) {
  rep.result["action"] = action;
  if (action == "macmahon") {
    if (a.qmax < 0) throw InputError("--qmax must be nonnegative");
    const auto c = mac_mahon_coefficients(a.e, a.qmax);
    Json list = Json::array();
    std::ostringstream t;
    t << "M(q)^" << a.e << " up to q^" << a.qmax << ":";
    for (const auto& x : c) {
      list.push_back(x.str());
      t << " " << x.str();
    }
    rep.result["e"] = a.e;
    rep.result["coefficients"] = list;
    rep.text = t.str() + "\n";
    return;
  }
  if (action == "dtpt") {
    TruncatedSeries p = TruncatedSeries::one(0, a.qmin, a.qmax, a.t_cap);
    if (!a.table.empty()) {
      const ClassSet cs = need_classes(a, ctx);
      p = table_series(need_table(a.table, "--table", cs, ctx), cs, a.qmin, a.qmax, a.t_cap);
    }
    const TruncatedSeries i = dtpt_transform(p, a.e);
    rep.result["e"] = a.e;
    rep.result["series"] = io::series_json(i);
    rep.text = "I = M(q)^" + std::to_string(a.e) + " * P\n" + series_text(i);
    return;
  }
  const ClassSet cs = need_classes(a, ctx);
  if (action == "pt-formula") {
    const auto s = pt_product_formula(cs, need_table(a.n_table, "--n-table", cs, ctx),
                                      need_table(a.l_table, "--l-table", cs, ctx), a.qmin, a.qmax, a.t_cap);
    rep.result["series"] = io::series_json(s);
    rep.text = "PT = exp(sum (-1)^(n-1) n N q^n t^beta) * L\n" + series_text(s);
  } else if (action == "palindrome") {
    const auto bad = palindrome_check(need_table(a.l_table, "--l-table", cs, ctx));
    rep.result["palindromic"] = !bad;
    std::string t = std::string("L table palindromic: ") + yes_no(!bad) + "\n";
    if (bad) {
      rep.result["first_violation"] = {{"beta", bad->first}, {"n", bad->second}};
      t += "first violation: t^" + to_string(bad->first) + " q^" + std::to_string(bad->second) + "\n";
      rep.exit_code = kNegative;
    }
    rep.text = t;
  } else if (action == "wall-cross") {
    if (a.walls.empty()) throw InputError("--walls is required");
    TruncatedSeries s = table_series(need_table(a.table, "--table", cs, ctx), cs, a.qmin, a.qmax, a.t_cap);
    for (const auto& wd : io::parse_walls(ctx.read_json(a.walls), cs))
      s = apply_wall_crossing(s, a.invert ? inverse_wall(wd) : wd, cs);
    rep.result["inverted"] = a.invert;
    rep.result["series"] = io::series_json(s);
    rep.text = std::string(a.invert ? "inverse wall factors applied\n" : "wall factors applied\n") + series_text(s);
  } else if (action == "telescope") {
    if (a.walls.empty()) throw InputError("--walls is required");
    const auto res = telescope_check(cs, need_table(a.n_table, "--n-table", cs, ctx),
                                     need_table(a.l_table, "--l-table", cs, ctx),
                                     io::parse_walls(ctx.read_json(a.walls), cs), a.qmin, a.qmax, a.t_cap);
    rep.result["ok"] = res.ok;
    std::string t = std::string("telescope: ") + (res.ok ? "OK" : "MISMATCH") + "\n";
    if (res.first) {
      const auto& d = *res.first;
      rep.result["first_discrepancy"] = {{"beta", d.beta},
                                         {"n", d.n},
                                         {"walls_times_L", io::rational_json(d.lhs)},
                                         {"product_formula", io::rational_json(d.rhs)}};
      t += "first discrepancy at t^" + to_string(d.beta) + " q^" + std::to_string(d.n) + ": walls*L = " +
           to_string(d.lhs) + ", product formula = " + to_string(d.rhs) + "\n";
      rep.exit_code = kNegative;
    }
    rep.text = t;
  } else {
    throw InputError("unknown series action '" + action + "'");
  }
}

// ---------------------------------------------------------------------------
// preset

struct PresetArgs {
  std::string name;
  std::map<std::string, std::string> values;  // option name -> raw value
};

class PresetOptions {
 public:
  explicit PresetOptions(const PresetArgs& a) : a_(a) {}

  std::int64_t integer(const std::string& key, std::int64_t def) {
    used_.insert(key);
    auto it = a_.values.find(key);
    if (it == a_.values.end()) return def;
    if (!detail::is_integer_literal(it->second)) throw InputError("--" + key + " expects an integer");
    return static_cast<std::int64_t>(detail::parse_integer(it->second));
  }
  Rational rational(const std::string& key, const Rational& def) {
    used_.insert(key);
    auto it = a_.values.find(key);
    return it == a_.values.end() ? def : parse_rational(it->second);
  }
  std::vector<std::string> unused() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : a_.values)
      if (!used_.count(k)) out.push_back(k);
    return out;
  }

 private:
  const PresetArgs& a_;
  std::set<std::string> used_;
};

inline Json dims_pair(const std::pair<SideDim, SideDim>& d) { return {io::side_json(d.first), io::side_json(d.second)}; }

inline void non_irreducible_report(const NonIrreduciblePreset& p, RunReport& rep, std::ostringstream& t) {
  Json classes = Json::array();
  for (const auto& c : p.classes) classes.push_back({{"id", c.id}, {"degree", io::rational_json(c.degree)}});
  rep.result["classes"] = classes;
  rep.result["beta"] = p.beta;
  rep.result["n"] = p.n;
  rep.result["walls"] = io::ladder_json(p.ladder);
  Json per = Json::array();
  for (const auto& c : p.per_wall) per.push_back(io::class_json(c));
  rep.result["classifications"] = per;
  rep.result["ledger"] = io::ledger_json(p.ledger);
  rep.result["annotations"] = p.annotations;
  t << "(beta, n) = (" << p.beta << ", " << p.n << ")\n";
  t << "walls: " << p.ladder.walls.size() << "\n";
  for (std::size_t i = 0; i < p.ladder.walls.size(); ++i) {
    t << "  t = " << to_string(p.ladder.walls[i].t) << ": " << to_string(p.per_wall[i].kind) << " (a="
      << *p.per_wall[i].find("a") << ", b=" << *p.per_wall[i].find("b") << ")\n";
  }
  t << "chambers:\n";
  for (const auto& c : p.ledger.chambers) t << "  " << c << "\n";
  t << "K-chain: " << p.ledger.chain << "\n";
  for (const auto& a : p.annotations) t << "annotation (conjectural where stated): " << a << "\n";
}

inline void cmd_preset(const PresetArgs& a, RunReport& rep) {
  PresetOptions o(a);
  std::ostringstream t;
  rep.result["preset"] = a.name;
  t << "preset: " << a.name << "\n";
  if (a.name == "toric-flip") {
    const auto p = toric_flip_preset(o.integer("a", 3), o.integer("b", 2), o.integer("c", 5));
    rep.result["a"] = p.a;
    rep.result["b"] = p.b;
    rep.result["c"] = p.c;
    rep.result["classification"] = io::class_json(p.cls);
    rep.result["local_model_dims"] = {p.dims.first, p.dims.second};
    t << "a=" << p.a << " b=" << p.b << " c=" << p.c << "\n" << io::class_text(p.cls);
    t << "local model dims: (" << p.dims.first << ", " << p.dims.second << ")\n";
  } else if (a.name == "grassmannian-flip") {
    const auto p = grassmannian_preset(o.integer("a1", 4), o.integer("b1", 2), o.integer("c", 0));
    rep.result["a1"] = p.a1;
    rep.result["b1"] = p.b1;
    rep.result["c"] = p.c;
    Json rows = Json::array();
    t << "a1=" << p.a1 << " b1=" << p.b1 << " c=" << p.c << "\n";
    for (const auto& r : p.rows) {
      rows.push_back({{"m", r.m}, {"classification", io::class_json(r.cls)}, {"strict_sufficient", r.strict_sufficient}});
      t << "  m=" << r.m << ": " << to_string(r.cls.kind) << " dims (" << to_string(r.cls.dims->first) << ", "
        << to_string(r.cls.dims->second) << ") strict_sufficient=" << yes_no(r.strict_sufficient) << "\n";
    }
    rep.result["rows"] = rows;
  } else if (a.name == "elliptic-fiber") {
    const auto p = elliptic_preset(o.rational("d1", 1), o.rational("d2", 1), o.integer("r", 1), o.integer("k", 1),
                                   o.integer("window", 10));
    rep.result["d1"] = io::rational_json(p.d1);
    rep.result["d2"] = io::rational_json(p.d2);
    rep.result["r"] = p.r;
    rep.result["k"] = p.k;
    rep.result["window"] = p.window;
    Json lines = Json::array();
    for (const auto& l : p.lines) lines.push_back(io::wall_line_json(l));
    rep.result["wall_lines"] = lines;
    if (p.b0_line) {
      rep.result["b0_x"] = io::rational_json(p.b0);
      rep.result["b0_line"] = *p.b0_line;
    }
    rep.result["fiber_ext1"] = p.fiber.ext1;
    rep.result["flip_path"] = p.flip_path;
    rep.result["fiber_classification"] = io::class_json(p.fiber_class);
    t << "d1=" << to_string(p.d1) << " d2=" << to_string(p.d2) << " r=" << p.r << " k=" << p.k << " |n1|<=" << p.window
      << "\n";
    t << "wall lines: " << p.lines.size() << " (all parallel to direction (d1, 3d1+d2))\n";
    for (const auto& l : p.lines) t << "  " << io::wall_line_text(l) << "\n";
    if (p.b0_line) t << "B0 = (" << to_string(p.b0) << ", 0) lies on line " << *p.b0_line << "\n";
    t << "fiber collection ext1: [[3," << p.r << "],[" << p.r << ",2]]\n";
    t << "flip classifier: " << p.flip_path << "\n";
    t << "flop classifier on the Ext quiver, m=(1,1):\n" << io::class_text(p.fiber_class);
  } else if (a.name == "abel-jacobi") {
    const auto p = abel_jacobi_model(o.integer("g", 3), o.integer("n", 1), o.integer("h1", 2));
    rep.result["g"] = p.g;
    rep.result["n"] = p.n;
    rep.result["h0"] = p.h0;
    rep.result["h1"] = p.h1;
    rep.result["classification"] = io::class_json(p.two_vertex);
    rep.result["irreducible_wall"] = io::class_json(p.irreducible);
    rep.result["dims"] = {p.dims.first, p.dims.second};
    rep.result["symmetric_product_dims"] = dims_pair(p.symmetric_products);
    t << "g=" << p.g << " n=" << p.n << " h0=" << p.h0 << " h1=" << p.h1 << "\n";
    t << "local model (a, b, c) = (" << p.h0 << ", " << p.h1 << ", " << p.g << ")\n" << io::class_text(p.two_vertex);
    t << "irreducible-wall reading: " << to_string(p.irreducible.kind) << "\n";
    t << "dims: (" << p.dims.first << ", " << p.dims.second << ")\n";
  } else if (a.name == "dtpt-point") {
    const auto p = dtpt_point_preset(o.integer("a", 2), o.integer("b", 1), o.integer("c", 0), o.integer("loops", 3),
                                     o.integer("m", 1));
    rep.result["a"] = p.a;
    rep.result["b"] = p.b;
    rep.result["c"] = p.c;
    rep.result["loops"] = p.loops;
    rep.result["m"] = p.m;
    rep.result["classification"] = io::class_json(p.cls);
    t << "ideal sheaf + " << p.m << " point(s): a=" << p.a << " b=" << p.b << " c=" << p.c << " loops=" << p.loops
      << "\n"
      << io::class_text(p.cls);
    rep.warnings.push_back({"W003", "ext data for dtpt-point is caller-supplied; defaults are illustrative"});
  } else if (a.name == "non-irreducible-1") {
    non_irreducible_report(non_irreducible_1_preset(o.rational("d1", 2), o.rational("d2", 1)), rep, t);
  } else if (a.name == "non-irreducible-2") {
    non_irreducible_report(non_irreducible_2_preset(o.rational("d", 1)), rep, t);
  } else {
    throw InputError("unknown preset '" + a.name +
                     "' (known: toric-flip, grassmannian-flip, elliptic-fiber, abel-jacobi, dtpt-point, "
                     "non-irreducible-1, non-irreducible-2)");
  }
  for (const auto& k : o.unused()) rep.warnings.push_back({"W002", "option --" + k + " is not used by this preset"});
  rep.text = t.str();
}

// ---------------------------------------------------------------------------
// oracle

struct OracleArgs {
  std::string quiver, dim, framing;
  int p = 2;
  std::size_t max_witnesses = 5;
};

inline void cmd_oracle(const OracleArgs& a, std::uint64_t budget, Context& ctx, RunReport& rep) {
  const Quiver q = io::parse_quiver(ctx.read_json(a.quiver));
  const DimVector m = io::parse_dim(q, a.dim);
  check_prime(a.p);
  if (!a.framing.empty()) (void)q.index_of(a.framing);
  const SimpleVerdict v = has_simple(q, m);
  std::uint64_t reps = 0, simple = 0, plus = 0, minus = 0;
  std::vector<std::string> dumps;
  for_each_rep(q, m, a.p, budget, [&](const FiniteRep& r) {
    ++reps;
    if (is_simple_abs(r, budget)) {
      ++simple;
      if (dumps.size() < a.max_witnesses) dumps.push_back(to_text(r));
    }
    if (!a.framing.empty()) {
      plus += is_star_plus_stable(r, a.framing);
      minus += is_star_minus_stable(r, a.framing);
    }
    return true;
  });
  const bool sound = simple == 0 || v.exists;
  rep.result["p"] = a.p;
  rep.result["dim"] = io::dim_json(m);
  rep.result["representations"] = reps;
  rep.result["simple_witnesses"] = simple;
  rep.result["criterion"] = io::verdict_json(q, v);
  rep.result["consistent"] = sound;
  if (!a.framing.empty()) {
    rep.result["framing"] = a.framing;
    rep.result["star_plus_stable"] = plus;
    rep.result["star_minus_stable"] = minus;
  }
  rep.result["witness_dump"] = dumps;
  std::ostringstream t;
  t << "F_" << a.p << " representations of dimension " << dim_text(m) << ": " << reps << "\n";
  t << "absolutely simple witnesses: " << simple << "\n";
  t << "criterion: " << describe(q, v) << "\n";
  t << "consistent: " << yes_no(sound) << (simple == 0 ? " (no witness; negative results are advisory)" : "") << "\n";
  if (!a.framing.empty())
    t << "star-plus stable: " << plus << ", star-minus stable: " << minus << " (framing " << a.framing << ")\n";
  for (const auto& d : dumps) t << d << "\n";
  if (simple > dumps.size())
    rep.warnings.push_back({"W004", "witness dump truncated to " + std::to_string(dumps.size()) + " of " +
                                        std::to_string(simple)});
  rep.text = t.str();
  if (!sound) rep.exit_code = kNegative;
}

// ---------------------------------------------------------------------------

inline void emit(const RunReport& rep, bool structured, std::ostream& out) {
  if (structured) {
    Json doc;
    doc["command"] = rep.command;
    doc["input_digest"] = rep.digest;
    doc["exit_code"] = rep.exit_code;
    doc["result"] = rep.result;
    Json ws = Json::array();
    for (const auto& w : rep.warnings) ws.push_back({{"code", w.code}, {"message", w.message}});
    doc["warnings"] = ws;
    out << doc.dump(2) << "\n";
    return;
  }
  out << "command: " << rep.command << "\n";
  out << "input digest: " << rep.digest << "\n";
  out << rep.text;
  for (const auto& w : rep.warnings) out << "warning " << w.code << ": " << w.message << "\n";
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wall-crossing and flip/flop classification for quiver moduli"};
  app.name("qmmp");
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  std::uint64_t budget = kDefaultRepBudget;
  app.add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--budget", budget, "enumeration budget for the finite-field oracle");

  WallsArgs wa;
  auto* walls = app.add_subcommand("walls", "enumerate the walls of a primitive dimension vector");
  walls->add_option("--quiver", wa.quiver, "quiver JSON file")->required();
  walls->add_option("--dim", wa.dim, "dimension vector, e.g. 1,1 or a=1,b=1")->required();
  walls->add_option("--charge", wa.charge, "central charge JSON file");

  SimplesArgs sa;
  auto* simples = app.add_subcommand("simples", "decide existence of a simple representation");
  simples->add_option("--quiver", sa.quiver, "quiver JSON file")->required();
  simples->add_option("--dim", sa.dim, "dimension vector")->required();

  ClassifyArgs ca;
  std::int64_t c_value = 0;
  auto* classify = app.add_subcommand("classify", "classify a wall-crossing diagram");
  classify->add_flag("--flop", ca.flop, "symmetric quiver (needs --quiver, --dim)");
  classify->add_flag("--flip", ca.flip, "extended quiver (needs --spec, --dim)");
  classify->add_option("--two-vertex", ca.two_vertex, "a b")->expected(2);
  classify->add_option("--irreducible", ca.irreducible, "n h1")->expected(2);
  auto* c_opt = classify->add_option("--c", c_value, "loop count for the local model dims with --two-vertex");
  classify->add_flag("--minimal-wall", ca.minimal_wall, "assume a minimal potential for the strictness check");
  classify->add_option("--quiver", ca.quiver, "quiver JSON file");
  classify->add_option("--spec", ca.spec, "extended quiver spec JSON file");
  classify->add_option("--dim", ca.dim, "dimension vector");

  SeriesArgs se;
  auto* series = app.add_subcommand("series", "generating-series computations");
  series->require_subcommand(1);
  std::string series_action;
  for (const char* name : {"macmahon", "pt-formula", "wall-cross", "telescope", "dtpt", "palindrome"}) {
    auto* s = series->add_subcommand(name);
    s->add_option("--classes", se.classes, "class set JSON file");
    s->add_option("--n-table", se.n_table, "N table JSON file");
    s->add_option("--l-table", se.l_table, "L table JSON file");
    s->add_option("--walls", se.walls, "wall data JSON file");
    s->add_option("--table", se.table, "series table JSON file");
    s->add_option("--e", se.e, "MacMahon exponent");
    s->add_option("--qmin", se.qmin, "lowest q power");
    s->add_option("--qmax", se.qmax, "highest q power");
    s->add_option("--tcap", se.t_cap, "cap on total curve weight");
    s->add_flag("--invert", se.invert, "apply inverse wall factors");
    s->callback([&series_action, name] { series_action = name; });
  }

  PresetArgs pa;
  auto* preset = app.add_subcommand("preset", "reproduce a worked example");
  preset->add_option("name", pa.name, "preset name")->required();
  for (const char* key : {"a", "b", "c", "a1", "b1", "g", "n", "h1", "d1", "d2", "d", "r", "k", "window", "loops", "m"}) {
    preset->add_option_function<std::string>(std::string("--") + key,
                                              [&pa, key](const std::string& v) { pa.values[key] = v; });
  }

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "exhaustive finite-field check of the simple-representation criterion");
  oracle->add_option("--quiver", oa.quiver, "quiver JSON file")->required();
  oracle->add_option("--dim", oa.dim, "dimension vector")->required();
  oracle->add_option("--p", oa.p, "field size (2, 3 or 5)");
  oracle->add_option("--framing", oa.framing, "framing vertex for star-stability counts");
  oracle->add_option("--max-witnesses", oa.max_witnesses, "witnesses to dump");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kInputError;
  }
  if (*c_opt) ca.c = c_value;

  RunReport rep;
  rep.command = "qmmp";
  for (int i = 1; i < argc; ++i) rep.command += std::string(" ") + argv[i];
  Context ctx;
  try {
    if (*walls) cmd_walls(wa, ctx, rep);
    else if (*simples) cmd_simples(sa, ctx, rep);
    else if (*classify) cmd_classify(ca, ctx, rep);
    else if (*series) cmd_series(series_action, se, ctx, rep);
    else if (*preset) cmd_preset(pa, rep);
    else if (*oracle) cmd_oracle(oa, budget, ctx, rep);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const BudgetExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kPrecondition;
  }
  // The rendering choice is not an input.
  std::string keyed;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--format") {
      ++i;
      continue;
    }
    if (a.rfind("--format=", 0) == 0) continue;
    keyed += a;
    keyed += '\0';
  }
  std::uint64_t h = fnv1a(keyed);
  for (const auto& in : ctx.inputs()) h = fnv1a(in, h);
  rep.digest = "fnv1a64:" + hex64(h);
  emit(rep, format == "structured", out);
  return rep.exit_code;
}

}  // namespace qmmp::cli
