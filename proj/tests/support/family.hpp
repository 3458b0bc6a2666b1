#pragma once

// The curated small-quiver family used to check the simple-representation
// criterion against exhaustive finite-field enumeration.
//
// Members: every quiver on 1 or 2 vertices with at most 2 arrows per ordered
// pair and at most 1 loop per vertex, plus a seeded sample of 3-vertex
// quivers with the same bounds; every nonzero m with entries <= 2. An
// instance (quiver, m, p) is enumerated when p^(matrix entries) fits the cap.

#include <cstdint>
#include <string>
#include <vector>

#include "generators.hpp"
#include "qmmp/rep_oracle.hpp"
#include "qmmp/simples.hpp"

namespace qmmp::testgen {

inline std::vector<DimVector> all_dims(std::size_t n, std::int64_t max_entry) {
  std::vector<DimVector> out;
  std::vector<std::int64_t> e(n, 0);
  while (true) {
    std::size_t k = n;
    while (k > 0 && e[k - 1] == max_entry) e[--k] = 0;
    if (k == 0) break;
    ++e[k - 1];
    out.emplace_back(e);
  }
  return out;
}

inline std::vector<Quiver> family_quivers(std::size_t three_vertex_samples, std::uint64_t seed) {
  std::vector<Quiver> qs;
  for (int l = 0; l <= 1; ++l) qs.push_back(Quiver({"a"}, std::vector<std::pair<VertexId, VertexId>>(l, {"a", "a"})));
  for (int ab = 0; ab <= 2; ++ab)
    for (int ba = 0; ba <= 2; ++ba)
      for (int la = 0; la <= 1; ++la)
        for (int lb = 0; lb <= 1; ++lb) {
          std::vector<std::pair<VertexId, VertexId>> e;
          for (int k = 0; k < ab; ++k) e.emplace_back("a", "b");
          for (int k = 0; k < ba; ++k) e.emplace_back("b", "a");
          for (int k = 0; k < la; ++k) e.emplace_back("a", "a");
          for (int k = 0; k < lb; ++k) e.emplace_back("b", "b");
          qs.push_back(Quiver({"a", "b"}, e));
        }
  Rng rng(seed);
  for (std::size_t s = 0; s < three_vertex_samples; ++s) qs.push_back(random_quiver(rng, 3, 2, 1));
  return qs;
}

inline std::uint64_t default_rep_cap(int p) { return p == 2 ? 65536 : 59049; }

struct OracleTally {
  std::uint64_t instances = 0;        // enumerated (quiver, m, p)
  std::uint64_t skipped = 0;          // over the cap
  std::uint64_t representations = 0;
  std::uint64_t soundness_violations = 0;
  std::uint64_t certificates_checked = 0;
  std::uint64_t certificate_failures = 0;
  std::uint64_t positives = 0;
  std::uint64_t positives_witnessed = 0;
  std::string first_problem;
};

/// Runs one instance: negative verdicts must admit no absolutely simple
/// representation, destabilizing certificates must be realized by every
/// representation, and positive verdicts are probed for a witness.
inline void check_instance(const Quiver& q, const DimVector& m, int p, OracleTally& t) {
  const SimpleVerdict v = has_simple(q, m);
  ++t.instances;
  if (v.exists) ++t.positives;
  bool witnessed = false;
  const bool destab = v.certificate == SimpleCertificate::DestabilizingVertex;
  DimVector target = m;
  if (destab) {
    const DimVector unit = DimVector::unit(q.size(), *v.vertex);
    target = *v.direction == Direction::Sub ? unit : m - unit;
  }
  for_each_rep(q, m, p, UINT64_MAX, [&](const FiniteRep& r) {
    ++t.representations;
    if (destab) {
      ++t.certificates_checked;
      if (!has_invariant_tuple_with_dim(r, target, UINT64_MAX)) {
        ++t.certificate_failures;
        if (t.first_problem.empty()) t.first_problem = "certificate not realized: " + to_text(r);
      }
    }
    if (v.exists) {
      if (!witnessed && is_simple_abs(r, UINT64_MAX)) witnessed = true;
      return !witnessed;
    }
    if (is_simple_abs(r, UINT64_MAX)) {
      ++t.soundness_violations;
      if (t.first_problem.empty()) t.first_problem = "simple witness against negative verdict: " + to_text(r);
    }
    return true;
  });
  if (witnessed) ++t.positives_witnessed;
}

inline OracleTally run_family(const std::vector<Quiver>& quivers, const std::vector<int>& primes) {
  OracleTally t;
  for (const auto& q : quivers)
    for (const auto& m : all_dims(q.size(), 2))
      for (int p : primes) {
        const auto count = rep_count(q, m, p);
        if (!count || *count > default_rep_cap(p)) {
          ++t.skipped;
          continue;
        }
        check_instance(q, m, p, t);
      }
  return t;
}

}  // namespace qmmp::testgen
