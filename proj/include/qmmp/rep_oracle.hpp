#pragma once

// Brute-force checks over a prime field F_p for tiny quivers: every
// representation of a dimension vector is enumerated and simplicity /
// star-stability are decided from invariant subspace tuples. Intended as an
// independent witness for the combinatorial criteria, not as a solver.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qmmp/errors.hpp"
#include "qmmp/quiver.hpp"

namespace qmmp {

inline constexpr std::uint64_t kDefaultRepBudget = 531441;  // 3^12

/// Dense matrix over F_p, row-major.
struct FpMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> data;

  FpMatrix() = default;
  FpMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  std::uint8_t& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::uint8_t at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;
};

inline void check_prime(int p) {
  if (p != 2 && p != 3 && p != 5) throw InputError("field order must be 2, 3 or 5");
}

inline int inv_mod(int x, int p) {
  for (int y = 1; y < p; ++y)
    if ((x * y) % p == 1) return y;
  throw InputError("zero has no inverse");
}

inline FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b, int p) {
  if (a.cols != b.rows) throw InputError("matrix shapes do not compose");
  FpMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < b.cols; ++j) {
      int s = 0;
      for (std::size_t k = 0; k < a.cols; ++k) s += a.at(i, k) * b.at(k, j);
      c.at(i, j) = static_cast<std::uint8_t>(s % p);
    }
  return c;
}

inline FpMatrix transpose(const FpMatrix& a) {
  FpMatrix t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
  return t;
}

inline FpMatrix identity(std::size_t n) {
  FpMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

/// Reduced row echelon form in place; returns the rank.
inline std::size_t rref(FpMatrix& m, int p) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = r;
    while (piv < m.rows && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows) continue;
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(piv, j));
    const int inv = inv_mod(m.at(r, c), p);
    for (std::size_t j = 0; j < m.cols; ++j) m.at(r, j) = static_cast<std::uint8_t>(m.at(r, j) * inv % p);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const int f = m.at(i, c);
      for (std::size_t j = 0; j < m.cols; ++j)
        m.at(i, j) = static_cast<std::uint8_t>(((m.at(i, j) - f * m.at(r, j)) % p + p) % p);
    }
    ++r;
  }
  return r;
}

inline std::optional<FpMatrix> inverse(const FpMatrix& a, int p) {
  if (a.rows != a.cols) throw InputError("only square matrices are invertible");
  const std::size_t n = a.rows;
  FpMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = 1;
  }
  rref(aug, p);
  for (std::size_t i = 0; i < n; ++i)
    if (aug.at(i, i) != 1) return std::nullopt;
  FpMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

/// A subspace of F_p^d given by an RREF basis (one row per basis vector).
struct Subspace {
  std::size_t dim = 0;
  FpMatrix basis;  // dim x d

  /// v in span(basis); v has length d.
  bool contains(std::vector<int> v, int p) const {
    for (std::size_t r = 0; r < dim; ++r) {
      std::size_t c = 0;
      while (basis.at(r, c) == 0) ++c;
      const int f = v[c];
      if (f == 0) continue;
      for (std::size_t j = 0; j < basis.cols; ++j) v[j] = ((v[j] - f * basis.at(r, j)) % p + p) % p;
    }
    for (int x : v)
      if (x) return false;
    return true;
  }
};

/// All subspaces of F_p^d, grouped by nothing in particular: ordered by
/// dimension, then pivot set, then free entries.
inline std::vector<Subspace> all_subspaces(std::size_t d, int p) {
  check_prime(p);
  std::vector<Subspace> out;
  for (std::size_t k = 0; k <= d; ++k) {
    // Pivot sets as increasing k-subsets of {0..d-1}.
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;
    while (true) {
      // Free positions: row r, column c > piv[r] with c not a pivot.
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = piv[r] + 1; c < d; ++c)
          if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(r, c);
      std::vector<int> vals(free.size(), 0);
      while (true) {
        Subspace s{k, FpMatrix(k, d)};
        for (std::size_t r = 0; r < k; ++r) s.basis.at(r, piv[r]) = 1;
        for (std::size_t f = 0; f < free.size(); ++f) s.basis.at(free[f].first, free[f].second) = static_cast<std::uint8_t>(vals[f]);
        out.push_back(std::move(s));
        std::size_t f = free.size();
        while (f > 0 && vals[f - 1] == p - 1) vals[--f] = 0;
        if (f == 0) break;
        ++vals[f - 1];
      }
      // Next k-subset.
      std::size_t i = k;
      while (i > 0 && piv[i - 1] == d - k + i - 1) --i;
      if (i == 0) break;
      ++piv[i - 1];
      for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  return out;
}

/// A representation: one (m_target x m_source) matrix per arrow, in the
/// quiver's arrow order.
struct FiniteRep {
  Quiver quiver;
  DimVector dim;
  int p = 2;
  std::vector<FpMatrix> maps;

  void validate() const {
    check_prime(p);
    check_indexed(quiver, dim);
    if (maps.size() != quiver.arrows().size()) throw InputError("one matrix per arrow expected");
    for (std::size_t e = 0; e < maps.size(); ++e) {
      const auto& a = quiver.arrows()[e];
      if (maps[e].rows != static_cast<std::size_t>(dim[a.target]) || maps[e].cols != static_cast<std::size_t>(dim[a.source]))
        throw InputError("matrix shape does not match the dimension vector");
      for (auto x : maps[e].data)
        if (x >= p) throw InputError("matrix entry outside F_p");
    }
  }
};

inline std::string to_text(const FiniteRep& r) {
  std::string s = "F_" + std::to_string(r.p) + " dim " + to_string(r.dim);
  for (std::size_t e = 0; e < r.maps.size(); ++e) {
    const auto& a = r.quiver.arrows()[e];
    s += "\n  " + r.quiver.id(a.source) + "->" + r.quiver.id(a.target) + ":";
    for (std::size_t i = 0; i < r.maps[e].rows; ++i) {
      s += " [";
      for (std::size_t j = 0; j < r.maps[e].cols; ++j) s += (j ? " " : "") + std::to_string(r.maps[e].at(i, j));
      s += "]";
    }
  }
  return s;
}

inline std::uint64_t entry_count(const Quiver& q, const DimVector& m) {
  std::uint64_t n = 0;
  for (const auto& a : q.arrows()) n += static_cast<std::uint64_t>(m[a.source] * m[a.target]);
  return n;
}

/// p^entries, or nullopt on overflow past 2^62.
inline std::optional<std::uint64_t> rep_count(const Quiver& q, const DimVector& m, int p) {
  std::uint64_t c = 1;
  for (std::uint64_t i = 0; i < entry_count(q, m); ++i) {
    if (c > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(p)) return std::nullopt;
    c *= static_cast<std::uint64_t>(p);
  }
  return c;
}

/// Visits every representation; the last matrix entry moves fastest. The
/// visitor returns false to stop early.
inline void for_each_rep(const Quiver& q, const DimVector& m, int p, std::uint64_t budget,
                         const std::function<bool(const FiniteRep&)>& visit) {
  check_prime(p);
  check_indexed(q, m);
  const auto count = rep_count(q, m, p);
  if (!count || *count > budget)
    throw BudgetExceeded("representation space too large for exhaustive enumeration", count ? *count : UINT64_MAX, budget);
  FiniteRep rep{q, m, p, {}};
  std::vector<std::uint8_t*> cells;
  for (const auto& a : q.arrows()) rep.maps.emplace_back(static_cast<std::size_t>(m[a.target]), static_cast<std::size_t>(m[a.source]));
  for (auto& mat : rep.maps)
    for (auto& x : mat.data) cells.push_back(&x);
  while (true) {
    if (!visit(rep)) return;
    std::size_t k = cells.size();
    while (k > 0 && *cells[k - 1] == p - 1) *cells[--k] = 0;
    if (k == 0) return;
    ++*cells[k - 1];
  }
}

inline std::vector<FiniteRep> enumerate_reps(const Quiver& q, const DimVector& m, int p,
                                             std::uint64_t budget = kDefaultRepBudget) {
  std::vector<FiniteRep> out;
  for_each_rep(q, m, p, budget, [&](const FiniteRep& r) {
    out.push_back(r);
    return true;
  });
  return out;
}

namespace detail {

inline std::vector<int> apply(const FpMatrix& u, const FpMatrix& basis, std::size_t row, int p) {
  std::vector<int> v(u.rows, 0);
  for (std::size_t i = 0; i < u.rows; ++i) {
    int s = 0;
    for (std::size_t k = 0; k < u.cols; ++k) s += u.at(i, k) * basis.at(row, k);
    v[i] = s % p;
  }
  return v;
}

inline bool invariant(const FiniteRep& r, const std::vector<const Subspace*>& tuple) {
  for (std::size_t e = 0; e < r.maps.size(); ++e) {
    const auto& a = r.quiver.arrows()[e];
    const Subspace& src = *tuple[a.source];
    const Subspace& dst = *tuple[a.target];
    for (std::size_t b = 0; b < src.dim; ++b)
      if (!dst.contains(apply(r.maps[e], src.basis, b, r.p), r.p)) return false;
  }
  return true;
}

/// Walks all tuples (V'_i) with V'_i drawn from choices[i]; stops when visit returns false.
inline void for_each_tuple(const std::vector<std::vector<Subspace>>& choices, std::uint64_t budget,
                           const std::function<bool(const std::vector<const Subspace*>&)>& visit) {
  std::uint64_t total = 1;
  for (const auto& c : choices) {
    if (c.empty()) return;
    total *= c.size();
    if (total > budget) throw BudgetExceeded("too many subspace tuples", total, budget);
  }
  std::vector<std::size_t> idx(choices.size(), 0);
  std::vector<const Subspace*> tuple(choices.size());
  while (true) {
    for (std::size_t i = 0; i < choices.size(); ++i) tuple[i] = &choices[i][idx[i]];
    if (!visit(tuple)) return;
    std::size_t k = choices.size();
    while (k > 0 && idx[k - 1] + 1 == choices[k - 1].size()) idx[--k] = 0;
    if (k == 0) return;
    ++idx[k - 1];
  }
}

inline std::vector<std::vector<Subspace>> subspace_choices(const FiniteRep& r) {
  std::vector<std::vector<Subspace>> ch;
  for (std::size_t i = 0; i < r.dim.size(); ++i) ch.push_back(all_subspaces(static_cast<std::size_t>(r.dim[i]), r.p));
  return ch;
}

}  // namespace detail

/// Number of invariant subspace tuples per dimension vector.
inline std::map<DimVector, std::uint64_t> invariant_subspace_tuples(const FiniteRep& r,
                                                                    std::uint64_t budget = kDefaultRepBudget) {
  r.validate();
  std::map<DimVector, std::uint64_t> counts;
  detail::for_each_tuple(detail::subspace_choices(r), budget, [&](const std::vector<const Subspace*>& t) {
    if (detail::invariant(r, t)) {
      std::vector<std::int64_t> d;
      for (auto* s : t) d.push_back(static_cast<std::int64_t>(s->dim));
      ++counts[DimVector(std::move(d))];
    }
    return true;
  });
  return counts;
}

/// Whether some invariant tuple has exactly the dimension vector d.
inline bool has_invariant_tuple_with_dim(const FiniteRep& r, const DimVector& d,
                                         std::uint64_t budget = kDefaultRepBudget) {
  r.validate();
  check_indexed(r.quiver, d);
  std::vector<std::vector<Subspace>> ch;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > r.dim[i]) return false;
    std::vector<Subspace> keep;
    for (auto& s : all_subspaces(static_cast<std::size_t>(r.dim[i]), r.p))
      if (s.dim == static_cast<std::size_t>(d[i])) keep.push_back(std::move(s));
    ch.push_back(std::move(keep));
  }
  bool found = false;
  detail::for_each_tuple(ch, budget, [&](const std::vector<const Subspace*>& t) {
    found = detail::invariant(r, t);
    return !found;
  });
  return found;
}

inline bool has_proper_invariant_tuple(const FiniteRep& r, std::uint64_t budget = kDefaultRepBudget) {
  r.validate();
  bool found = false;
  detail::for_each_tuple(detail::subspace_choices(r), budget, [&](const std::vector<const Subspace*>& t) {
    std::int64_t tot = 0;
    for (auto* s : t) tot += static_cast<std::int64_t>(s->dim);
    if (tot != 0 && tot != r.dim.total() && detail::invariant(r, t)) found = true;
    return !found;
  });
  return found;
}

/// dim_{F_p} End(V): solutions (X_i) of u_e X_s = X_t u_e.
inline std::size_t endomorphism_dimension(const FiniteRep& r) {
  r.validate();
  const std::size_t n = r.dim.size();
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + static_cast<std::size_t>(r.dim[i] * r.dim[i]);
  const std::size_t unknowns = offset[n];
  std::vector<std::vector<int>> rows;
  for (std::size_t e = 0; e < r.maps.size(); ++e) {
    const auto& a = r.quiver.arrows()[e];
    const auto& u = r.maps[e];
    const auto ms = static_cast<std::size_t>(r.dim[a.source]), mt = static_cast<std::size_t>(r.dim[a.target]);
    for (std::size_t i = 0; i < mt; ++i)
      for (std::size_t j = 0; j < ms; ++j) {
        // (u X_s)_{ij} - (X_t u)_{ij} = sum_k u_ik Xs_kj - sum_k Xt_ik u_kj
        std::vector<int> row(unknowns, 0);
        for (std::size_t k = 0; k < ms; ++k) {
          auto& c = row[offset[a.source] + k * ms + j];
          c = (c + u.at(i, k)) % r.p;
        }
        for (std::size_t k = 0; k < mt; ++k) {
          auto& c = row[offset[a.target] + i * mt + k];
          c = ((c - u.at(k, j)) % r.p + r.p) % r.p;
        }
        rows.push_back(std::move(row));
      }
  }
  if (rows.empty()) return unknowns;
  FpMatrix sys(rows.size(), unknowns);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < unknowns; ++j) sys.at(i, j) = static_cast<std::uint8_t>(rows[i][j]);
  return unknowns - rref(sys, r.p);
}

/// Absolutely simple: no proper invariant tuple and End = F_p.
inline bool is_simple_abs(const FiniteRep& r, std::uint64_t budget = kDefaultRepBudget) {
  r.validate();
  if (r.dim.is_zero()) return false;
  return !has_proper_invariant_tuple(r, budget) && endomorphism_dimension(r) == 1;
}

struct ClosureResult {
  bool stable = false;
  std::size_t iterations = 0;
};

/// Star-plus stability: V_0 = F_p generates everything. Starting from the
/// images of the framing arrows, the span is closed under base arrows;
/// iterations counts the passes that enlarged it.
inline ClosureResult star_plus_closure(const FiniteRep& r, const VertexId& framing) {
  r.validate();
  const std::size_t f = r.quiver.index_of(framing);
  if (r.dim[f] != 1) throw InputError("the framing vertex must have dimension 1");
  const std::size_t n = r.dim.size();
  std::vector<FpMatrix> span(n);
  for (std::size_t i = 0; i < n; ++i) span[i] = FpMatrix(0, static_cast<std::size_t>(r.dim[i]));

  auto add_vector = [&](std::size_t i, const std::vector<int>& v) {
    FpMatrix m(span[i].rows + 1, span[i].cols);
    std::copy(span[i].data.begin(), span[i].data.end(), m.data.begin());
    for (std::size_t j = 0; j < v.size(); ++j) m.at(span[i].rows, j) = static_cast<std::uint8_t>(v[j]);
    const std::size_t rk = rref(m, r.p);
    if (rk == span[i].rows) return false;
    FpMatrix t(rk, m.cols);
    std::copy(m.data.begin(), m.data.begin() + static_cast<std::ptrdiff_t>(rk * m.cols), t.data.begin());
    span[i] = std::move(t);
    return true;
  };

  FpMatrix unit(1, 1);
  unit.at(0, 0) = 1;
  for (std::size_t e = 0; e < r.maps.size(); ++e) {
    const auto& a = r.quiver.arrows()[e];
    if (a.source == f && a.target != f) add_vector(a.target, detail::apply(r.maps[e], unit, 0, r.p));
  }
  ClosureResult res;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t e = 0; e < r.maps.size(); ++e) {
      const auto& a = r.quiver.arrows()[e];
      if (a.source == f || a.target == f) continue;
      const FpMatrix src = span[a.source];
      for (std::size_t b = 0; b < src.rows; ++b)
        if (add_vector(a.target, detail::apply(r.maps[e], src, b, r.p))) changed = true;
    }
    if (changed) ++res.iterations;
  }
  res.stable = true;
  for (std::size_t i = 0; i < n; ++i)
    if (i != f && span[i].rows != static_cast<std::size_t>(r.dim[i])) res.stable = false;
  return res;
}

inline bool is_star_plus_stable(const FiniteRep& r, const VertexId& framing) { return star_plus_closure(r, framing).stable; }

/// The representation of the opposite quiver given by transposed matrices.
inline FiniteRep dual_rep(const FiniteRep& r) {
  r.validate();
  std::vector<Arrow> arrows;
  std::vector<std::pair<Arrow, FpMatrix>> pairs;
  for (std::size_t e = 0; e < r.maps.size(); ++e) {
    const auto& a = r.quiver.arrows()[e];
    pairs.emplace_back(Arrow{a.target, a.source}, transpose(r.maps[e]));
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  FiniteRep d{Quiver(), r.dim, r.p, {}};
  for (auto& [a, m] : pairs) {
    arrows.push_back(a);
    d.maps.push_back(std::move(m));
  }
  d.quiver = Quiver::from_arrows(r.quiver.vertices(), std::move(arrows));
  return d;
}

/// Star-minus stability: V_0 = F_p cogenerates, i.e. the dual is star-plus stable.
inline bool is_star_minus_stable(const FiniteRep& r, const VertexId& framing) {
  return star_plus_closure(dual_rep(r), framing).stable;
}

/// g_t u_e g_s^{-1} with random invertible g_i.
inline FiniteRep random_base_change(const FiniteRep& r, std::mt19937_64& rng) {
  r.validate();
  std::uniform_int_distribution<int> digit(0, r.p - 1);
  std::vector<FpMatrix> g, ginv;
  for (std::size_t i = 0; i < r.dim.size(); ++i) {
    const auto d = static_cast<std::size_t>(r.dim[i]);
    while (true) {
      FpMatrix m(d, d);
      for (auto& x : m.data) x = static_cast<std::uint8_t>(digit(rng));
      if (auto inv = inverse(m, r.p)) {
        g.push_back(std::move(m));
        ginv.push_back(std::move(*inv));
        break;
      }
    }
  }
  FiniteRep out = r;
  for (std::size_t e = 0; e < r.maps.size(); ++e) {
    const auto& a = r.quiver.arrows()[e];
    out.maps[e] = mat_mul(mat_mul(g[a.target], r.maps[e], r.p), ginv[a.source], r.p);
  }
  return out;
}

}  // namespace qmmp
