#pragma once

// Quivers, dimension vectors and the Euler pairing.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmmp/errors.hpp"

namespace qmmp {

using VertexId = std::string;

/// An arrow between two vertices, stored by vertex index.
struct Arrow {
  std::size_t source;
  std::size_t target;

  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

/// Finite directed multigraph. Loops are allowed.
///
/// Vertex ids are kept in sorted order and arrows sorted by (source, target),
/// so two quivers built from the same data in any order compare equal and
/// print identically.
class Quiver {
 public:
  Quiver() = default;

  Quiver(std::vector<VertexId> vertices, const std::vector<std::pair<VertexId, VertexId>>& edges)
      : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
      throw InputError("duplicate vertex id");
    arrows_.reserve(edges.size());
    for (const auto& [s, t] : edges) arrows_.push_back({index_of(s), index_of(t)});
    finish();
  }

  /// Builds directly from index-based arrows; vertices must already be sorted.
  static Quiver from_arrows(std::vector<VertexId> sorted_vertices, std::vector<Arrow> arrows) {
    Quiver q;
    q.vertices_ = std::move(sorted_vertices);
    if (!std::is_sorted(q.vertices_.begin(), q.vertices_.end()) ||
        std::adjacent_find(q.vertices_.begin(), q.vertices_.end()) != q.vertices_.end())
      throw InputError("vertex ids must be sorted and distinct");
    for (const auto& a : arrows)
      if (a.source >= q.vertices_.size() || a.target >= q.vertices_.size())
        throw InputError("arrow endpoint out of range");
    q.arrows_ = std::move(arrows);
    q.finish();
    return q;
  }

  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }
  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const VertexId& id(std::size_t i) const { return vertices_.at(i); }

  std::optional<std::size_t> find(const VertexId& v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  std::size_t index_of(const VertexId& v) const {
    if (auto i = find(v)) return *i;
    throw InputError("unknown vertex '" + v + "'");
  }

  /// Number of arrows i -> j.
  std::int64_t edge_count(std::size_t i, std::size_t j) const { return counts_.at(i * size() + j); }
  std::int64_t loops(std::size_t i) const { return edge_count(i, i); }

  std::vector<std::pair<VertexId, VertexId>> edge_list() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(arrows_.size());
    for (const auto& a : arrows_) out.emplace_back(vertices_[a.source], vertices_[a.target]);
    return out;
  }

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.vertices_ == b.vertices_ && a.arrows_ == b.arrows_;
  }

 private:
  void finish() {
    std::sort(arrows_.begin(), arrows_.end());
    counts_.assign(size() * size(), 0);
    for (const auto& a : arrows_) ++counts_[a.source * size() + a.target];
  }

  std::vector<VertexId> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::int64_t> counts_;
};

/// Nonnegative integer weight per vertex, positionally aligned with the
/// sorted vertex order of a quiver.
class DimVector {
 public:
  DimVector() = default;
  explicit DimVector(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
    for (auto e : entries_)
      if (e < 0) throw InputError("dimension vector entries must be nonnegative");
  }

  static DimVector zero(std::size_t n) { return DimVector(std::vector<std::int64_t>(n, 0)); }
  static DimVector unit(std::size_t n, std::size_t i) {
    DimVector d = zero(n);
    d.entries_.at(i) = 1;
    return d;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  std::int64_t operator[](std::size_t i) const { return entries_[i]; }
  std::int64_t at(std::size_t i) const { return entries_.at(i); }
  const std::vector<std::int64_t>& entries() const noexcept { return entries_; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](auto e) { return e == 0; });
  }

  std::int64_t gcd() const {
    std::int64_t g = 0;
    for (auto e : entries_) g = std::gcd(g, e);
    return g;
  }

  /// Nonzero with coprime entries.
  bool is_primitive() const { return gcd() == 1; }

  std::int64_t total() const { return std::accumulate(entries_.begin(), entries_.end(), std::int64_t{0}); }

  friend DimVector operator+(const DimVector& a, const DimVector& b) {
    if (a.size() != b.size()) throw InputError("dimension vector size mismatch");
    DimVector r = a;
    for (std::size_t i = 0; i < a.size(); ++i) r.entries_[i] += b.entries_[i];
    return r;
  }
  friend DimVector operator-(const DimVector& a, const DimVector& b) {
    if (a.size() != b.size()) throw InputError("dimension vector size mismatch");
    DimVector r = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
      r.entries_[i] -= b.entries_[i];
      if (r.entries_[i] < 0) throw InputError("difference leaves the positive cone");
    }
    return r;
  }

  friend bool operator==(const DimVector&, const DimVector&) = default;
  friend auto operator<=>(const DimVector& a, const DimVector& b) { return a.entries_ <=> b.entries_; }

 private:
  std::vector<std::int64_t> entries_;
};

inline std::string to_string(const DimVector& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(m[i]);
  }
  return s + ")";
}

/// Builds a dimension vector from id -> value pairs; unspecified vertices get 0.
inline DimVector dim_vector(const Quiver& q, const std::map<VertexId, std::int64_t>& values) {
  std::vector<std::int64_t> e(q.size(), 0);
  for (const auto& [v, x] : values) e[q.index_of(v)] = x;
  return DimVector(std::move(e));
}

inline void check_indexed(const Quiver& q, const DimVector& m) {
  if (m.size() != q.size())
    throw InputError("dimension vector has " + std::to_string(m.size()) + " entries, quiver has " +
                     std::to_string(q.size()) + " vertices");
}

/// <m, m2> = sum_i m_i m2_i - sum_{arrows e} m_{s(e)} m2_{t(e)}.
inline std::int64_t euler_pairing(const Quiver& q, const DimVector& m, const DimVector& m2) {
  check_indexed(q, m);
  check_indexed(q, m2);
  std::int64_t r = 0;
  for (std::size_t i = 0; i < q.size(); ++i) r += m[i] * m2[i];
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r -= q.edge_count(i, j) * m[i] * m2[j];
  return r;
}

inline Quiver dual_quiver(const Quiver& q) {
  std::vector<Arrow> reversed;
  reversed.reserve(q.arrows().size());
  for (const auto& a : q.arrows()) reversed.push_back({a.target, a.source});
  return Quiver::from_arrows(q.vertices(), std::move(reversed));
}

inline bool is_symmetric(const Quiver& q) {
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j)
      if (q.edge_count(i, j) != q.edge_count(j, i)) return false;
  return true;
}

/// Indices (in q) of the vertices with m_i > 0, ascending.
inline std::vector<std::size_t> support(const Quiver& q, const DimVector& m) {
  check_indexed(q, m);
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (m[i] > 0) s.push_back(i);
  return s;
}

/// Full subquiver on the given vertex indices (ascending).
inline Quiver full_subquiver(const Quiver& q, const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> new_index(q.size(), q.size());
  std::vector<VertexId> ids;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    new_index.at(keep[k]) = k;
    ids.push_back(q.id(keep[k]));
  }
  std::vector<Arrow> arrows;
  for (const auto& a : q.arrows())
    if (new_index[a.source] < q.size() && new_index[a.target] < q.size())
      arrows.push_back({new_index[a.source], new_index[a.target]});
  return Quiver::from_arrows(std::move(ids), std::move(arrows));
}

inline Quiver support_subquiver(const Quiver& q, const DimVector& m) { return full_subquiver(q, support(q, m)); }

inline DimVector restrict_to(const DimVector& m, const std::vector<std::size_t>& keep) {
  std::vector<std::int64_t> e;
  e.reserve(keep.size());
  for (auto i : keep) e.push_back(m.at(i));
  return DimVector(std::move(e));
}

/// reach[i][j]: a directed path of length >= 0 runs from i to j.
inline std::vector<std::vector<bool>> reachability(const Quiver& q) {
  const std::size_t n = q.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (const auto& a : q.arrows()) r[a.source][a.target] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  return r;
}

/// First ordered pair (i, j) with no directed path i -> j, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> unreachable_pair(const Quiver& q) {
  const auto r = reachability(q);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      if (!r[i][j]) return std::pair{i, j};
  return std::nullopt;
}

inline bool is_strongly_connected(const Quiver& q) {
  if (q.empty()) throw InputError("strong connectivity of the empty quiver is undefined");
  return !unreachable_pair(q).has_value();
}

/// Shape of supp(m): a single loop-free vertex, an oriented n-cycle, or neither.
struct TrivialType {
  enum class Kind { A1, TildeAn, Other };
  Kind kind = Kind::Other;
  std::size_t n = 0;  // cycle length for TildeAn

  friend bool operator==(const TrivialType&, const TrivialType&) = default;
};

inline std::string to_string(const TrivialType& t) {
  switch (t.kind) {
    case TrivialType::Kind::A1:
      return "A1";
    case TrivialType::Kind::TildeAn:
      return "TildeA" + std::to_string(t.n);
    case TrivialType::Kind::Other:
      break;
  }
  return "Other";
}

/// Classifies a quiver as A1, an oriented cycle TildeA_n (n = 1 is a single
/// loop), or Other.
inline TrivialType trivial_type_of(const Quiver& s) {
  const std::size_t n = s.size();
  if (n == 0) return {};
  if (n == 1) {
    if (s.loops(0) == 0) return {TrivialType::Kind::A1, 0};
    if (s.loops(0) == 1) return {TrivialType::Kind::TildeAn, 1};
    return {};
  }
  if (s.arrows().size() != n) return {};
  std::vector<int> out(n, 0), in(n, 0);
  for (const auto& a : s.arrows()) {
    if (a.source == a.target) return {};
    ++out[a.source];
    ++in[a.target];
  }
  for (std::size_t i = 0; i < n; ++i)
    if (out[i] != 1 || in[i] != 1) return {};
  // In/out degree one everywhere: a union of cycles; one cycle iff connected.
  if (!is_strongly_connected(s)) return {};
  return {TrivialType::Kind::TildeAn, n};
}

inline TrivialType detect_trivial_type(const Quiver& q, const DimVector& m) {
  if (m.is_zero()) throw InputError("dimension vector must be nonzero");
  return trivial_type_of(support_subquiver(q, m));
}

/// Exponent of det V_i in the canonical bundle of a fine moduli space:
/// out-degree minus in-degree. Loops cancel.
inline std::vector<std::int64_t> canonical_character(const Quiver& q) {
  std::vector<std::int64_t> k(q.size(), 0);
  for (const auto& a : q.arrows()) {
    ++k[a.source];
    --k[a.target];
  }
  return k;
}

inline std::int64_t expected_stable_dim(const Quiver& q, const DimVector& m) {
  if (m.is_zero()) throw InputError("dimension vector must be nonzero");
  return 1 - euler_pairing(q, m, m);
}

}  // namespace qmmp
