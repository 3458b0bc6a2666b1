#pragma once

// Geometric wall-crossing scenarios expressed as classifier inputs: Ext
// quivers of simple collections, wall lines on an elliptic Calabi-Yau 3-fold,
// stable-pair wall ladders, irreducible-class and Abel-Jacobi diagrams, and
// the K-ordered ledger of a sequence of wall-crossings.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmmp/classifier.hpp"
#include "qmmp/quiver.hpp"
#include "qmmp/rational.hpp"

namespace qmmp {

// ---------------------------------------------------------------------------
// Ext quivers

/// Objects 0..k of a simple collection: object 0 is the distinguished
/// rank-one object, 1..k are shifted one-dimensional sheaves. ext1[i][j] is
/// dim Ext^1(E_i, E_j). Hom = C on the diagonal and the vanishing of negative
/// Ext groups are part of the input contract and not checked.
struct CollectionDescriptor {
  std::vector<std::vector<std::int64_t>> ext1;
  std::vector<std::string> labels;  // optional; defaults to "0".."k"

  std::size_t size() const { return ext1.size(); }

  std::string label(std::size_t i) const { return labels.empty() ? std::to_string(i) : labels.at(i); }

  void validate() const {
    const std::size_t n = ext1.size();
    if (n == 0) throw InputError("collection must contain at least the rank-one object");
    if (!labels.empty() && labels.size() != n) throw InputError("one label per object expected");
    for (const auto& row : ext1) {
      if (row.size() != n) throw InputError("ext1 must be a square matrix");
      for (auto x : row)
        if (x < 0) throw InputError("ext1 entries must be nonnegative");
    }
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (ext1[i][j] != ext1[j][i])
          throw InputError("ext1 between one-dimensional objects " + label(i) + " and " + label(j) +
                           " must be symmetric");
  }
};

/// Vertices are the objects; E[i][j] = ext1[i][j].
inline Quiver ext_quiver(const CollectionDescriptor& desc) {
  desc.validate();
  std::vector<VertexId> ids;
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::size_t i = 0; i < desc.size(); ++i) ids.push_back(desc.label(i));
  for (std::size_t i = 0; i < desc.size(); ++i)
    for (std::size_t j = 0; j < desc.size(); ++j)
      for (std::int64_t k = 0; k < desc.ext1[i][j]; ++k) edges.emplace_back(desc.label(i), desc.label(j));
  return Quiver(std::move(ids), edges);
}

/// Reads the collection as Q*: a_i = ext1[0][i], b_i = ext1[i][0], c = ext1[0][0].
inline ExtendedQuiverSpec extended_spec(const CollectionDescriptor& desc) {
  const Quiver q = ext_quiver(desc);
  ExtendedQuiverSpec spec;
  spec.framing = desc.label(0);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q.id(i) != spec.framing) keep.push_back(i);
  spec.base = full_subquiver(q, keep);
  const std::size_t f = q.index_of(spec.framing);
  for (std::size_t i = 0; i < spec.base.size(); ++i) {
    const std::size_t v = q.index_of(spec.base.id(i));
    spec.a.push_back(q.edge_count(f, v));
    spec.b.push_back(q.edge_count(v, f));
  }
  spec.c = q.loops(f);
  return spec;
}

// ---------------------------------------------------------------------------
// Elliptic Calabi-Yau 3-fold: walls for one-dimensional sheaves in the
// (x, y) plane of B = x[D] + y[H], class beta = r[F] + k[l].

/// The affine line coef_x * x + coef_y * y = rhs cut out by a decomposition
/// (beta, 1) = (beta1, n1) + (beta2, n2) with beta1 = r1[F] + k1[l].
struct WallLine {
  std::int64_t r1 = 0;
  std::int64_t k1 = 0;
  std::int64_t n1 = 0;
  Rational coef_x;
  Rational coef_y;
  Rational rhs;

  bool contains(const Rational& x, const Rational& y) const { return coef_x * x + coef_y * y == rhs; }
  // Direction vector (-coef_y, coef_x).
  std::pair<Rational, Rational> direction() const { return {-coef_y, coef_x}; }
};

inline bool parallel(const WallLine& a, const WallLine& b) { return a.coef_x * b.coef_y == a.coef_y * b.coef_x; }

inline std::vector<WallLine> elliptic_walls(const Rational& d1, const Rational& d2, std::int64_t r, std::int64_t k,
                                            std::int64_t n_lo, std::int64_t n_hi) {
  if (d1 <= 0 || d2 <= 0) throw InputError("fiber and line degrees must be positive");
  if (r < 0 || k < 0) throw InputError("class coefficients must be nonnegative");
  if (r == 0 && k == 0) throw InputError("the curve class must be nonzero");
  if (n_lo > n_hi) throw InputError("empty n1 window");
  std::vector<WallLine> lines;
  for (std::int64_t r1 = 0; r1 <= r; ++r1) {
    for (std::int64_t k1 = 0; k1 <= k; ++k1) {
      if ((r1 == 0 && k1 == 0) || (r1 == r && k1 == k)) continue;
      const std::int64_t den = r * k1 - k * r1;
      if (den == 0) continue;
      for (std::int64_t n1 = n_lo; n1 <= n_hi; ++n1) {
        WallLine w;
        w.r1 = r1;
        w.k1 = k1;
        w.n1 = n1;
        w.coef_x = 3 * d1 + d2;
        w.coef_y = -d1;
        w.rhs = (Rational(r1) * d1 + Rational(k1) * d2 - Rational(n1) * (Rational(r) * d1 + Rational(k) * d2)) /
                Rational(den);
        lines.push_back(std::move(w));
      }
    }
  }
  return lines;
}

// ---------------------------------------------------------------------------
// Stable-pair wall ladders

struct CurveClass {
  std::string id;
  Rational degree;  // omega . beta
};

struct LadderWall {
  Rational t;
  std::vector<std::pair<std::string, std::int64_t>> sources;  // (class id, n') with n'/deg = t
  bool positive() const { return t > 0; }
};

/// Walls sorted strictly decreasing.
struct WallLadder {
  std::vector<LadderWall> walls;
  std::vector<std::string> warnings;
};

inline constexpr std::int64_t kDefaultWindowSlack = 10;

/// Candidate walls t = n'/(omega . beta') for the wall-crossing between stable
/// pairs (t >> 0) and their duals (t << 0).
///
/// beta itself contributes the single wall n/(omega . beta) (rank-one part
/// O_X). Every listed class of strictly smaller degree contributes
/// n'/(omega . beta') for each n' in the window. The caller supplies only
/// the sub-classes that actually split off; no bound on n' is computable, so
/// without an explicit window |n'| <= |n| + 10 is used with a warning.
inline WallLadder stable_pair_walls(const std::vector<CurveClass>& classes, const std::string& beta_id,
                                    std::int64_t n,
                                    std::optional<std::pair<std::int64_t, std::int64_t>> n_window = std::nullopt) {
  if (classes.empty()) throw InputError("class list is empty");
  const CurveClass* beta = nullptr;
  for (const auto& c : classes) {
    if (c.degree <= 0) throw InputError("class " + c.id + " must have positive degree");
    if (c.id == beta_id) beta = &c;
  }
  if (!beta) throw InputError("class '" + beta_id + "' is not in the class list");

  WallLadder ladder;
  if (!n_window) {
    const std::int64_t w = (n < 0 ? -n : n) + kDefaultWindowSlack;
    n_window = std::pair{-w, w};
    ladder.warnings.push_back("W001: default n' window |n'| <= " + std::to_string(w) +
                              "; no effective bound on n' is known, widen the window if walls may be missing");
  }
  if (n_window->first > n_window->second) throw InputError("empty n' window");

  std::map<Rational, std::vector<std::pair<std::string, std::int64_t>>, std::greater<>> by_t;
  by_t[Rational(n) / beta->degree].emplace_back(beta->id, n);
  for (const auto& c : classes) {
    if (c.id == beta_id || c.degree >= beta->degree) continue;
    for (std::int64_t np = n_window->first; np <= n_window->second; ++np)
      by_t[Rational(np) / c.degree].emplace_back(c.id, np);
  }
  for (auto& [t, src] : by_t) ladder.walls.push_back({t, std::move(src)});
  return ladder;
}

// ---------------------------------------------------------------------------
// Irreducible classes and Abel-Jacobi diagrams

/// Diagram P_n -> M_n <- P_{-n} at a sheaf F with h^1(F) = h1.
inline DiagramClass classify_irreducible_wall(std::int64_t n, std::int64_t h1) {
  if (h1 < 0) throw InputError("h1 must be nonnegative");
  const bool reversed = n < 0;
  const std::int64_t m = reversed ? -n : n;
  DiagramKind kind;
  if (m > 0)
    kind = h1 > 1 ? DiagramKind::GeneralizedFlip : (h1 == 1 ? DiagramKind::DivisorialContraction : DiagramKind::GeneralizedMFS);
  else
    kind = h1 > 1 ? DiagramKind::GeneralizedFlop : (h1 == 1 ? DiagramKind::Isomorphism : DiagramKind::EmptyBothSides);
  DiagramClass c = make_class(kind, reversed);
  c.note("n", std::to_string(n));
  c.note("h1", std::to_string(h1));
  if (kind == DiagramKind::GeneralizedFlip) c.note("local_model", "standard toric flip");
  if (reversed) c.note("orientation", "n < 0: sides exchanged");
  c.note("interpretation", "analytic d-critical reading documented only; the quiver-side diagram is what is classified");
  return c;
}

struct AbelJacobiReport {
  std::int64_t g = 0;
  std::int64_t n = 0;
  std::int64_t h0 = 0;
  std::int64_t h1 = 0;
  DiagramClass two_vertex;    // classify_two_vertex(h0, h1)
  DiagramClass irreducible;   // classify_irreducible_wall(n, h1)
  std::pair<std::int64_t, std::int64_t> dims;  // local_model_dims(h0, h1, g)
  std::pair<SideDim, SideDim> symmetric_products;  // dim S^{n+g-1}(C), dim S^{-n+g-1}(C)
};

/// Local model at [L] in Pic^{n+g-1}(C): a = h^0(L), b = h^1(L), c = g.
/// Riemann-Roch h^0 - h^1 = n fixes h^0.
inline AbelJacobiReport abel_jacobi_model(std::int64_t g, std::int64_t n, std::int64_t h1) {
  if (g < 0) throw InputError("genus must be nonnegative");
  if (h1 < 0) throw InputError("h1 must be nonnegative");
  const std::int64_t h0 = n + h1;
  if (h0 < 0) throw InputError("h0 = n + h1 must be nonnegative");
  AbelJacobiReport r;
  r.g = g;
  r.n = n;
  r.h0 = h0;
  r.h1 = h1;
  r.two_vertex = classify_two_vertex(h0, h1);
  r.irreducible = classify_irreducible_wall(n, h1);
  r.dims = local_model_dims(h0, h1, g);
  const auto sym = [](std::int64_t k) { return k >= 0 ? SideDim(k) : std::nullopt; };
  r.symmetric_products = {sym(n + g - 1), sym(-n + g - 1)};
  return r;
}

// ---------------------------------------------------------------------------
// Zigzag ledger

struct LedgerStep {
  Rational t;
  DiagramClass cls;
  std::string relation;  // ">", "=", "<", "n/a" between chamber j and chamber j+1
  std::optional<bool> strict;
};

struct MmpLedger {
  std::vector<std::string> chambers;  // chamber j lies between wall j-1 and wall j
  std::vector<LedgerStep> steps;
  std::string chain;
};

inline bool is_flop_kind(DiagramKind k) { return k == DiagramKind::GeneralizedFlop || k == DiagramKind::ToricFlop; }

/// Orders the chambers of a ladder by their canonical divisors.
///
/// Chamber 0 (t above every wall) is the stable-pair side, the chamber just
/// above t = 0 carries the L-invariants and the last chamber is the dual
/// stable-pair side. Positive walls must not be flops; a wall at t = 0 must be.
inline MmpLedger mmp_ledger(const WallLadder& ladder, const std::vector<DiagramClass>& per_wall,
                            const std::vector<std::optional<bool>>& strict = {}) {
  if (per_wall.size() != ladder.walls.size())
    throw InputError("one classification per wall expected (" + std::to_string(ladder.walls.size()) + " walls, " +
                     std::to_string(per_wall.size()) + " classes)");
  if (!strict.empty() && strict.size() != ladder.walls.size()) throw InputError("one strictness flag per wall expected");
  for (std::size_t i = 1; i < ladder.walls.size(); ++i)
    if (!(ladder.walls[i].t < ladder.walls[i - 1].t)) throw InputError("ladder walls must be strictly decreasing");

  MmpLedger led;
  const std::size_t l = ladder.walls.size();
  for (std::size_t j = 0; j <= l; ++j) {
    std::vector<std::string> roles;
    const bool above_all = j == 0;
    const bool below_all = j == l;
    // Chamber j is the interval (t_j, t_{j-1}) with t_{-1} = +inf, t_l = -inf.
    const bool contains_0_plus = (j == l || ladder.walls[j].t <= 0) && (j == 0 || ladder.walls[j - 1].t > 0);
    if (above_all) roles.push_back("PT side (t >> 0)");
    if (contains_0_plus) roles.push_back("L side (0 < t << 1)");
    if (below_all) roles.push_back("dual PT side (t << 0)");
    std::string name = "M" + std::to_string(j);
    if (!roles.empty()) {
      name += " [";
      for (std::size_t r = 0; r < roles.size(); ++r) name += (r ? "; " : "") + roles[r];
      name += "]";
    }
    led.chambers.push_back(std::move(name));
  }

  led.chain = "M0";
  for (std::size_t i = 0; i < l; ++i) {
    const auto& w = ladder.walls[i];
    const auto& c = per_wall[i];
    if (w.t > 0 && is_flop_kind(c.kind))
      throw PreconditionError("wall t=" + to_string(w.t) + " is positive but classified as a flop");
    if (w.t == 0 && c.k_relation != KRelation::Equal)
      throw PreconditionError("the wall at t=0 must be a flop-type (K-equal) diagram, got " + std::string(to_string(c.kind)));
    std::string rel = to_string(c.k_relation);
    if (c.reversed && c.k_relation == KRelation::Greater) rel = "<";
    if (c.reversed && c.k_relation == KRelation::GreaterEqual) rel = "<=";
    led.steps.push_back({w.t, c, rel, strict.empty() ? std::nullopt : strict[i]});
    led.chain += " " + rel + " M" + std::to_string(i + 1);
  }
  return led;
}

// ---------------------------------------------------------------------------
// Presets

struct ToricFlipPreset {
  std::int64_t a = 3, b = 2, c = 5;
  DiagramClass cls;
  std::pair<std::int64_t, std::int64_t> dims;
};

inline ToricFlipPreset toric_flip_preset(std::int64_t a = 3, std::int64_t b = 2, std::int64_t c = 5) {
  ToricFlipPreset p{a, b, c, classify_two_vertex(a, b), local_model_dims(a, b, c)};
  return p;
}

struct GrassmannianRow {
  std::int64_t m;
  DiagramClass cls;
  bool strict_sufficient;
};

struct GrassmannianPreset {
  std::int64_t a1 = 4, b1 = 2, c = 0;
  std::vector<GrassmannianRow> rows;
};

inline ExtendedQuiverSpec single_vertex_spec(std::int64_t a1, std::int64_t b1, std::int64_t c, std::int64_t loops = 0) {
  std::vector<std::pair<VertexId, VertexId>> edges(static_cast<std::size_t>(loops), {"1", "1"});
  return ExtendedQuiverSpec{Quiver({"1"}, edges), {a1}, {b1}, c, "0"};
}

/// Sweeps m = 1..a1 over the one-vertex extended quiver (a1 > b1 required).
inline GrassmannianPreset grassmannian_preset(std::int64_t a1 = 4, std::int64_t b1 = 2, std::int64_t c = 0) {
  if (a1 <= b1) throw PreconditionError("the Grassmannian flip needs a1 > b1");
  GrassmannianPreset p{a1, b1, c, {}};
  const auto spec = single_vertex_spec(a1, b1, c);
  for (std::int64_t m = 1; m <= a1; ++m) {
    const DimVector dm(std::vector<std::int64_t>{m});
    p.rows.push_back({m, classify_extended_flip(spec, dm), is_strict_sufficient(spec, dm, true)});
  }
  return p;
}

struct EllipticPreset {
  Rational d1 = 1, d2 = 1;
  std::int64_t r = 1, k = 1, window = 10;
  std::vector<WallLine> lines;
  Rational b0;  // x-coordinate of B0 = d2 / (r (3 d1 + d2)) [D] when k = 1
  std::optional<std::size_t> b0_line;  // index of the (r[F],1) + ([l],0) wall
  CollectionDescriptor fiber;          // E1 = rank r bundle on F, E2 = O_l(-1)
  std::string flip_path;               // directive returned by the flip classifier
  DiagramClass fiber_class;
};

inline EllipticPreset elliptic_preset(const Rational& d1 = 1, const Rational& d2 = 1, std::int64_t r = 1,
                                      std::int64_t k = 1, std::int64_t window = 10) {
  EllipticPreset p;
  p.d1 = d1;
  p.d2 = d2;
  p.r = r;
  p.k = k;
  p.window = window;
  p.lines = elliptic_walls(d1, d2, r, k, -window, window);
  if (k == 1 && r > 0) {
    p.b0 = d2 / (Rational(r) * (3 * d1 + d2));
    for (std::size_t i = 0; i < p.lines.size(); ++i)
      if (p.lines[i].r1 == r && p.lines[i].k1 == 0 && p.lines[i].n1 == 1) p.b0_line = i;
  }
  // Ext^1(E1,E1) = C^3, Ext^1(E2,E2) = C^2, Ext^1(E1,E2) = Ext^1(E2,E1) = C^r.
  p.fiber.ext1 = {{3, r}, {r, 2}};
  p.fiber.labels = {"1", "2"};
  const ExtendedQuiverSpec spec = extended_spec(p.fiber);
  try {
    (void)classify_extended_flip(spec, DimVector(std::vector<std::int64_t>{1}));
    p.flip_path = "accepted";
  } catch (const PreconditionError& e) {
    p.flip_path = e.what();
  }
  const Quiver q = ext_quiver(p.fiber);
  p.fiber_class = classify_symmetric_flop(q, DimVector(std::vector<std::int64_t>{1, 1}));
  return p;
}

struct DtptPreset {
  std::int64_t a = 2, b = 1, c = 0, loops = 3, m = 1;
  DiagramClass cls;
};

/// Ideal sheaf I_C (framing vertex) plus a point sheaf O_x[-1] with
/// multiplicity m. The ext data is caller-supplied.
inline DtptPreset dtpt_point_preset(std::int64_t a = 2, std::int64_t b = 1, std::int64_t c = 0, std::int64_t loops = 3,
                                    std::int64_t m = 1) {
  DtptPreset p{a, b, c, loops, m, {}};
  p.cls = classify_extended_flip(single_vertex_spec(a, b, c, loops), DimVector(std::vector<std::int64_t>{m}));
  return p;
}

struct NonIrreduciblePreset {
  std::vector<CurveClass> classes;
  std::string beta;
  std::int64_t n = 0;
  WallLadder ladder;
  std::vector<DiagramClass> per_wall;
  MmpLedger ledger;
  std::vector<std::string> annotations;
};

/// Chain of two (-1,-1) curves C = C1 + C2 meeting at a point, (beta, n) = ([C], 2),
/// d1 = C1.omega > d2 = C2.omega.
inline NonIrreduciblePreset non_irreducible_1_preset(const Rational& d1 = 2, const Rational& d2 = 1) {
  if (!(d1 > d2 && d2 > 0)) throw InputError("need d1 > d2 > 0");
  NonIrreduciblePreset p;
  p.beta = "C";
  p.n = 2;
  // The only sub-class that splits off is C2, as O_{C2}[-1] next to I_{C1}.
  p.classes = {{"C2", d2}, {"C", d1 + d2}};
  p.ladder = stable_pair_walls(p.classes, p.beta, p.n, std::pair<std::int64_t, std::int64_t>{1, 1});
  // Wall 1: Ext quiver of {I_{C1}, O_{C2}[-1]} has 2 arrows 0 -> 1 and 1 arrow 1 -> 0.
  // Wall 2: C1 = P^1 = P(V+) with dim V+ = 2 contracts to a point; minus side empty.
  p.per_wall = {classify_two_vertex(2, 1), classify_two_vertex(2, 0)};
  p.ledger = mmp_ledger(p.ladder, p.per_wall);
  p.annotations = {"reduced diagram: C -> C1 <- C1 -> pt <- empty",
                   "conjectural scheme structure: g(u, v) = u^2, P_2 locally Crit(x^2 y^2)"};
  return p;
}

/// A single (-1,-1) curve, (beta, n) = (2[C], 4), d = C.omega.
inline NonIrreduciblePreset non_irreducible_2_preset(const Rational& d = 1) {
  if (d <= 0) throw InputError("need d > 0");
  NonIrreduciblePreset p;
  p.beta = "2C";
  p.n = 4;
  p.classes = {{"C", d}, {"2C", 2 * d}};
  p.ladder = stable_pair_walls(p.classes, p.beta, p.n, std::pair<std::int64_t, std::int64_t>{2, 3});
  // Wall 1: Ext quiver of {I_C, O_C(2)[-1]} has 4 arrows 0 -> 1 and 1 arrow 1 -> 0:
  // the blow-up of C^4 at the origin. Wall 2: a point with empty minus side.
  p.per_wall = {classify_two_vertex(4, 1), classify_two_vertex(1, 0)};
  p.ledger = mmp_ledger(p.ladder, p.per_wall);
  p.annotations = {"reduced diagram: P^3 -> pt <- pt -> pt <- empty",
                   "conjectural scheme structure: g = uv + ts, P_4 non-reduced along a quadric in P^3"};
  return p;
}

}  // namespace qmmp
