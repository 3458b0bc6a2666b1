#pragma once

// Existence of simple representations (Le Bruyn-Procesi criterion) with
// certificates.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmmp/quiver.hpp"

namespace qmmp {

enum class SimpleCertificate {
  TypeI,                 // supp(m) is A1 or an oriented cycle and m is 1 on it
  InequalitiesOK,        // supp(m) strongly connected, all pairings with unit vectors <= 0
  NotStronglyConnected,  // witness: ordered pair with no directed path
  TypeMismatch,          // A1 / cycle support but some m_i >= 2
  DestabilizingVertex,   // <m, i> > 0 (quotient S_i) or <i, m> > 0 (sub S_i)
};

enum class Direction { Sub, Quotient };

inline const char* to_string(SimpleCertificate c) {
  switch (c) {
    case SimpleCertificate::TypeI:
      return "TypeI";
    case SimpleCertificate::InequalitiesOK:
      return "InequalitiesOK";
    case SimpleCertificate::NotStronglyConnected:
      return "NotStronglyConnected";
    case SimpleCertificate::TypeMismatch:
      return "TypeMismatch";
    case SimpleCertificate::DestabilizingVertex:
      return "DestabilizingVertex";
  }
  return "?";
}

inline const char* to_string(Direction d) { return d == Direction::Sub ? "sub" : "quotient"; }

struct SimpleVerdict {
  bool exists = false;
  SimpleCertificate certificate = SimpleCertificate::InequalitiesOK;
  TrivialType shape;                                  // TypeI, TypeMismatch
  std::optional<std::size_t> vertex;                  // TypeMismatch, DestabilizingVertex (index in q)
  std::optional<Direction> direction;                 // DestabilizingVertex
  std::optional<std::pair<std::size_t, std::size_t>> unreachable;  // NotStronglyConnected (indices in q)
  std::int64_t pairing = 0;                           // the violating pairing, DestabilizingVertex
};

inline std::string describe(const Quiver& q, const SimpleVerdict& v) {
  std::string s = std::string(to_string(v.certificate));
  switch (v.certificate) {
    case SimpleCertificate::TypeI:
      s += "(" + to_string(v.shape) + ")";
      break;
    case SimpleCertificate::TypeMismatch:
      s += "(" + to_string(v.shape) + ", vertex " + q.id(*v.vertex) + ")";
      break;
    case SimpleCertificate::DestabilizingVertex:
      s += "(" + q.id(*v.vertex) + ", " + to_string(*v.direction) + ", pairing " + std::to_string(v.pairing) + ")";
      break;
    case SimpleCertificate::NotStronglyConnected:
      s += "(no path " + q.id(v.unreachable->first) + " -> " + q.id(v.unreachable->second) + ")";
      break;
    case SimpleCertificate::InequalitiesOK:
      break;
  }
  return s;
}

namespace detail {
/// A vertex of s outside the undirected component of vertex 0, if any.
inline std::optional<std::size_t> outside_component(const Quiver& s) {
  std::vector<bool> seen(s.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (const auto& a : s.arrows()) {
      for (auto [x, y] : {std::pair{a.source, a.target}, std::pair{a.target, a.source}})
        if (x == v && !seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
    }
  }
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!seen[i]) return i;
  return std::nullopt;
}
}  // namespace detail

/// Decides whether a simple representation of dimension m exists.
///
/// Cycle/A1 supports are settled by the shape alone. A support that falls
/// apart into several pieces is reported as such; otherwise a violated
/// pairing inequality is reported before a one-way connectivity failure,
/// since it names a simple sub or quotient that every representation carries.
inline SimpleVerdict has_simple(const Quiver& q, const DimVector& m) {
  check_indexed(q, m);
  if (m.is_zero()) throw InputError("dimension vector must be nonzero");
  const auto supp = support(q, m);
  const Quiver sub = full_subquiver(q, supp);
  SimpleVerdict v;
  v.shape = trivial_type_of(sub);

  if (v.shape.kind != TrivialType::Kind::Other) {
    for (auto i : supp) {
      if (m[i] >= 2) {
        v.exists = false;
        v.certificate = SimpleCertificate::TypeMismatch;
        v.vertex = i;
        return v;
      }
    }
    v.exists = true;
    v.certificate = SimpleCertificate::TypeI;
    return v;
  }

  if (auto far = detail::outside_component(sub)) {
    v.certificate = SimpleCertificate::NotStronglyConnected;
    v.unreachable = std::pair{supp[0], supp[*far]};
    return v;
  }

  for (auto i : supp) {
    const DimVector unit = DimVector::unit(q.size(), i);
    if (const auto p = euler_pairing(q, m, unit); p > 0) {
      v.certificate = SimpleCertificate::DestabilizingVertex;
      v.vertex = i;
      v.direction = Direction::Quotient;
      v.pairing = p;
      return v;
    }
    if (const auto p = euler_pairing(q, unit, m); p > 0) {
      v.certificate = SimpleCertificate::DestabilizingVertex;
      v.vertex = i;
      v.direction = Direction::Sub;
      v.pairing = p;
      return v;
    }
  }

  if (auto bad = unreachable_pair(sub)) {
    v.certificate = SimpleCertificate::NotStronglyConnected;
    v.unreachable = std::pair{supp[bad->first], supp[bad->second]};
    return v;
  }

  v.exists = true;
  v.certificate = SimpleCertificate::InequalitiesOK;
  return v;
}

/// On a symmetric quiver, simple representations are stable for every charge,
/// and stable loci for all generic charges are empty or nonempty together.
inline bool symmetric_stable_nonempty(const Quiver& q, const DimVector& m) {
  if (!is_symmetric(q))
    throw InputError(
        "stable-locus nonemptiness is only decided for symmetric quivers; use has_simple together with chamber "
        "data for general quivers");
  return has_simple(q, m).exists;
}

}  // namespace qmmp
