#pragma once

// Truncated generating series in q and curve-class variables t^beta:
// wall-crossing factors, the product formula for stable-pair invariants, and
// the MacMahon transform to ideal-sheaf invariants.
//
// A series stores exact rational coefficients for q-powers inside its window
// and curve weights of total size <= t_cap. Dropping a nonzero coefficient
// outside the q-window is recorded (lost_above / lost_below) so that products
// can shrink their window to the range they determine exactly.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmmp/errors.hpp"
#include "qmmp/rational.hpp"

namespace qmmp {

using Weight = std::vector<std::int64_t>;

inline std::string to_string(const Weight& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + "]";
}

inline std::int64_t total(const Weight& w) {
  std::int64_t t = 0;
  for (auto x : w) t += x;
  return t;
}

/// Named curve classes with positive degrees omega . beta_i.
struct ClassSet {
  std::vector<std::string> ids;
  std::vector<Rational> degrees;

  std::size_t size() const { return ids.size(); }

  void validate() const {
    if (ids.size() != degrees.size()) throw InputError("one degree per class expected");
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (degrees[i] <= 0) throw InputError("class " + ids[i] + " must have positive degree");
      for (std::size_t j = 0; j < i; ++j)
        if (ids[i] == ids[j]) throw InputError("duplicate class id " + ids[i]);
    }
  }

  void check(const Weight& w) const {
    if (w.size() != size()) throw InputError("weight " + to_string(w) + " has the wrong number of classes");
    for (auto x : w)
      if (x < 0) throw InputError("weight " + to_string(w) + " is not effective");
  }

  Rational degree(const Weight& w) const {
    check(w);
    Rational d = 0;
    for (std::size_t i = 0; i < w.size(); ++i) d += Rational(w[i]) * degrees[i];
    return d;
  }
};

struct SeriesKey {
  std::int64_t total = 0;
  Weight beta;
  std::int64_t n = 0;
  friend auto operator<=>(const SeriesKey&, const SeriesKey&) = default;
};

inline constexpr std::int64_t kUnboundedQ = std::int64_t{1} << 40;

class TruncatedSeries {
 public:
  TruncatedSeries(std::size_t classes, std::int64_t n_min, std::int64_t n_max, std::int64_t t_cap)
      : classes_(classes), n_min_(n_min), n_max_(n_max), t_cap_(t_cap) {
    if (n_min > n_max) throw InputError("empty q-window");
    if (t_cap < 0) throw InputError("t_cap must be nonnegative");
  }

  /// Window wide enough that nothing is ever dropped in q.
  static TruncatedSeries exact(std::size_t classes, std::int64_t t_cap) {
    return TruncatedSeries(classes, -kUnboundedQ, kUnboundedQ, t_cap);
  }

  static TruncatedSeries one(std::size_t classes, std::int64_t n_min, std::int64_t n_max, std::int64_t t_cap) {
    TruncatedSeries s(classes, n_min, n_max, t_cap);
    s.add(Weight(classes, 0), 0, 1);
    return s;
  }

  std::size_t classes() const { return classes_; }
  std::int64_t n_min() const { return n_min_; }
  std::int64_t n_max() const { return n_max_; }
  std::int64_t t_cap() const { return t_cap_; }
  bool lost_above() const { return lost_above_; }
  bool lost_below() const { return lost_below_; }
  const std::map<SeriesKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Weight& beta, std::int64_t n, const Rational& v) {
    if (beta.size() != classes_) throw InputError("weight " + to_string(beta) + " has the wrong number of classes");
    if (v == 0) return;
    const std::int64_t t = total(beta);
    if (t > t_cap_) return;
    if (n > n_max_) {
      lost_above_ = true;
      return;
    }
    if (n < n_min_) {
      lost_below_ = true;
      return;
    }
    auto [it, fresh] = terms_.try_emplace(SeriesKey{t, beta, n}, v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add(const TruncatedSeries& o) {
    if (o.classes_ != classes_) throw InputError("series over different class sets");
    for (const auto& [k, v] : o.terms_) add(k.beta, k.n, v);
    lost_above_ = lost_above_ || o.lost_above_;
    lost_below_ = lost_below_ || o.lost_below_;
  }

  TruncatedSeries scaled(const Rational& s) const {
    TruncatedSeries r(classes_, n_min_, n_max_, t_cap_);
    r.lost_above_ = lost_above_;
    r.lost_below_ = lost_below_;
    for (const auto& [k, v] : terms_) r.add(k.beta, k.n, v * s);
    return r;
  }

  Rational coeff(const Weight& beta, std::int64_t n) const {
    auto it = terms_.find(SeriesKey{total(beta), beta, n});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  TruncatedSeries truncated(std::int64_t n_min, std::int64_t n_max, std::int64_t t_cap) const {
    if (n_min < n_min_ || n_max > n_max_ || t_cap > t_cap_)
      throw InputError("truncation target must lie inside the current window and cap");
    TruncatedSeries r(classes_, n_min, n_max, t_cap);
    r.lost_above_ = lost_above_;
    r.lost_below_ = lost_below_;
    for (const auto& [k, v] : terms_) r.add(k.beta, k.n, v);
    return r;
  }

  std::optional<std::int64_t> min_n() const {
    std::optional<std::int64_t> m;
    for (const auto& [k, v] : terms_) m = m ? std::min(*m, k.n) : k.n;
    return m;
  }
  std::optional<std::int64_t> max_n() const {
    std::optional<std::int64_t> m;
    for (const auto& [k, v] : terms_) m = m ? std::max(*m, k.n) : k.n;
    return m;
  }

  /// Same window, cap and coefficients.
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.classes_ == b.classes_ && a.n_min_ == b.n_min_ && a.n_max_ == b.n_max_ && a.t_cap_ == b.t_cap_ &&
           a.terms_ == b.terms_;
  }

 private:
  std::size_t classes_;
  std::int64_t n_min_, n_max_, t_cap_;
  bool lost_above_ = false;
  bool lost_below_ = false;
  std::map<SeriesKey, Rational> terms_;
};

/// Product on the intersection of the windows, shrunk further to the range the
/// stored coefficients determine exactly.
inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.classes() != b.classes()) throw InputError("series over different class sets");
  std::int64_t lo = std::max(a.n_min(), b.n_min());
  std::int64_t hi = std::min(a.n_max(), b.n_max());
  const std::int64_t cap = std::min(a.t_cap(), b.t_cap());
  constexpr auto kInf = std::numeric_limits<std::int64_t>::max() / 4;
  // Dropped terms of x above x.hi land at > x.hi + (lowest power of y).
  auto upper_limit = [&](const TruncatedSeries& x, const TruncatedSeries& y) -> std::int64_t {
    if (!x.lost_above()) return kInf;
    if (y.is_zero()) return kInf;
    if (y.lost_below()) return -kInf;
    return x.n_max() + *y.min_n();
  };
  auto lower_limit = [&](const TruncatedSeries& x, const TruncatedSeries& y) -> std::int64_t {
    if (!x.lost_below()) return -kInf;
    if (y.is_zero()) return -kInf;
    if (y.lost_above()) return kInf;
    return x.n_min() + *y.max_n();
  };
  hi = std::min({hi, upper_limit(a, b), upper_limit(b, a)});
  lo = std::max({lo, lower_limit(a, b), lower_limit(b, a)});
  if (lo > hi) throw InputError("the product is not determined on any q-window by the given truncations");

  TruncatedSeries r(a.classes(), lo, hi, cap);
  Weight w(a.classes());
  for (const auto& [ka, va] : a.terms()) {
    if (ka.total > cap) continue;
    for (const auto& [kb, vb] : b.terms()) {
      if (ka.total + kb.total > cap) continue;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = ka.beta[i] + kb.beta[i];
      r.add(w, ka.n + kb.n, va * vb);
    }
  }
  return r;
}

/// exp(X) = sum_{k <= t_cap} X^k / k! for X without weight-zero terms.
inline TruncatedSeries exp_nilpotent(const TruncatedSeries& x) {
  for (const auto& [k, v] : x.terms())
    if (k.total == 0) throw InputError("exponent has a term of curve weight zero at q^" + std::to_string(k.n));
  TruncatedSeries result = TruncatedSeries::one(x.classes(), x.n_min(), x.n_max(), x.t_cap());
  TruncatedSeries power = result;
  for (std::int64_t k = 1; k <= x.t_cap(); ++k) {
    power = series_mul(power, x).scaled(Rational(1, k));
    if (power.is_zero()) break;
    result.add(power);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Tables

struct TableRow {
  Weight beta;
  std::int64_t n = 0;
  Rational value;
};

using SeriesTable = std::vector<TableRow>;

inline void validate_table(const SeriesTable& rows, const ClassSet& classes, const char* what) {
  std::map<std::pair<Weight, std::int64_t>, bool> seen;
  for (const auto& r : rows) {
    classes.check(r.beta);
    if (!seen.emplace(std::pair{r.beta, r.n}, true).second)
      throw InputError(std::string(what) + ": duplicate row for beta=" + to_string(r.beta) + " n=" + std::to_string(r.n));
  }
}

inline std::map<std::pair<Weight, std::int64_t>, Rational> table_map(const SeriesTable& rows) {
  std::map<std::pair<Weight, std::int64_t>, Rational> m;
  for (const auto& r : rows) m[{r.beta, r.n}] = r.value;
  return m;
}

/// First (beta, n) with L(beta, n) != L(beta, -n), if any.
inline std::optional<std::pair<Weight, std::int64_t>> palindrome_check(const SeriesTable& l) {
  const auto m = table_map(l);
  for (const auto& [key, v] : m) {
    auto it = m.find({key.first, -key.second});
    const Rational mirror = it == m.end() ? Rational(0) : it->second;
    if (mirror != v) return key;
  }
  return std::nullopt;
}

/// X = sum_{beta > 0, n > 0} (-1)^{n-1} n N_{n,beta} q^n t^beta (exact in q).
/// Rows with n < 0 must mirror their n > 0 partner; rows with n <= 0 add nothing.
inline TruncatedSeries n_exponent(const SeriesTable& nt, const ClassSet& classes, std::int64_t t_cap) {
  validate_table(nt, classes, "N table");
  const auto m = table_map(nt);
  TruncatedSeries x = TruncatedSeries::exact(classes.size(), t_cap);
  for (const auto& r : nt) {
    if (total(r.beta) == 0) throw InputError("N table: rows need a nonzero curve class");
    if (r.n < 0) {
      auto it = m.find({r.beta, -r.n});
      if (it != m.end() && it->second != r.value)
        throw InputError("N table: N(beta, n) != N(beta, -n) at beta=" + to_string(r.beta) + " n=" + std::to_string(-r.n));
      continue;
    }
    if (r.n == 0) continue;
    const Rational s = (r.n % 2 == 1) ? Rational(r.n) : Rational(-r.n);
    x.add(r.beta, r.n, s * r.value);
  }
  return x;
}

/// 1 + sum_{beta > 0} L_{n,beta} q^n t^beta (exact in q).
inline TruncatedSeries l_series(const SeriesTable& lt, const ClassSet& classes, std::int64_t t_cap) {
  validate_table(lt, classes, "L table");
  TruncatedSeries s = TruncatedSeries::one(classes.size(), -kUnboundedQ, kUnboundedQ, t_cap);
  for (const auto& r : lt) {
    if (total(r.beta) == 0) throw InputError("L table: the beta = 0 term is fixed to 1; rows need a nonzero class");
    s.add(r.beta, r.n, r.value);
  }
  return s;
}

/// Series given literally by a table, truncated to the window.
inline TruncatedSeries table_series(const SeriesTable& rows, const ClassSet& classes, std::int64_t n_min,
                                    std::int64_t n_max, std::int64_t t_cap) {
  validate_table(rows, classes, "table");
  TruncatedSeries s(classes.size(), n_min, n_max, t_cap);
  for (const auto& r : rows) s.add(r.beta, r.n, r.value);
  return s;
}

/// PT = exp(X) * L on the window.
inline TruncatedSeries pt_product_formula(const ClassSet& classes, const SeriesTable& nt, const SeriesTable& lt,
                                          std::int64_t n_min, std::int64_t n_max, std::int64_t t_cap) {
  classes.validate();
  if (auto bad = palindrome_check(lt))
    throw PreconditionError("L table is not symmetric under n -> -n at beta=" + to_string(bad->first) +
                            " n=" + std::to_string(bad->second));
  const TruncatedSeries p = series_mul(exp_nilpotent(n_exponent(nt, classes, t_cap)), l_series(lt, classes, t_cap));
  return p.truncated(n_min, n_max, t_cap);
}

// ---------------------------------------------------------------------------
// Walls

/// A wall at t = n / (omega . beta) with the invariants of the classes that
/// become semistable there.
struct WallDatum {
  Rational t;
  SeriesTable contributions;  // (beta, n > 0, N)
};

inline void validate_wall(const WallDatum& wd, const ClassSet& classes) {
  if (wd.t <= 0) throw InputError("wall position t must be positive, got " + to_string(wd.t));
  validate_table(wd.contributions, classes, "wall");
  for (const auto& r : wd.contributions) {
    if (total(r.beta) == 0) throw InputError("wall contributions need a nonzero curve class");
    if (r.n <= 0) throw InputError("wall contributions need n > 0");
    if (Rational(r.n) / classes.degree(r.beta) != wd.t)
      throw InputError("contribution beta=" + to_string(r.beta) + " n=" + std::to_string(r.n) + " lies on t=" +
                       to_string(Rational(r.n) / classes.degree(r.beta)) + ", not on t=" + to_string(wd.t));
  }
}

inline WallDatum inverse_wall(WallDatum wd) {
  for (auto& r : wd.contributions) r.value = -r.value;
  return wd;
}

/// exp(sum (-1)^{n-1} n N q^n t^beta) over the wall's contributions, exact in q.
inline TruncatedSeries wall_factor(const WallDatum& wd, const ClassSet& classes, std::int64_t t_cap) {
  validate_wall(wd, classes);
  return exp_nilpotent(n_exponent(wd.contributions, classes, t_cap));
}

inline TruncatedSeries wall_factor(const WallDatum& wd, const ClassSet& classes, std::int64_t n_min,
                                   std::int64_t n_max, std::int64_t t_cap) {
  return wall_factor(wd, classes, t_cap).truncated(n_min, n_max, t_cap);
}

/// Multiplies by the wall factor, keeping the series' window and cap.
inline TruncatedSeries apply_wall_crossing(const TruncatedSeries& s, const WallDatum& wd, const ClassSet& classes) {
  return series_mul(wall_factor(wd, classes, s.t_cap()), s);
}

struct Discrepancy {
  Weight beta;
  std::int64_t n = 0;
  Rational lhs;
  Rational rhs;
};

struct TelescopeResult {
  bool ok = true;
  std::optional<Discrepancy> first;
  TruncatedSeries lhs;
  TruncatedSeries rhs;
};

/// First coefficient (in dump order) where the two series differ.
inline std::optional<Discrepancy> first_difference(const TruncatedSeries& a, const TruncatedSeries& b) {
  std::map<SeriesKey, bool> keys;
  for (const auto& [k, v] : a.terms()) keys[k] = true;
  for (const auto& [k, v] : b.terms()) keys[k] = true;
  for (const auto& [k, unused] : keys) {
    const Rational x = a.coeff(k.beta, k.n), y = b.coeff(k.beta, k.n);
    if (x != y) return Discrepancy{k.beta, k.n, x, y};
  }
  return std::nullopt;
}

/// Crosses the walls from t -> infinity down to t -> 0+ starting at L and
/// compares with the product formula on the window.
inline TelescopeResult telescope_check(const ClassSet& classes, const SeriesTable& nt, const SeriesTable& lt,
                                       const std::vector<WallDatum>& walls, std::int64_t n_min, std::int64_t n_max,
                                       std::int64_t t_cap) {
  for (std::size_t i = 1; i < walls.size(); ++i)
    if (!(walls[i].t < walls[i - 1].t)) throw InputError("walls must be listed with t strictly decreasing");
  TruncatedSeries rhs = pt_product_formula(classes, nt, lt, n_min, n_max, t_cap);
  TruncatedSeries acc = l_series(lt, classes, t_cap);
  for (auto it = walls.rbegin(); it != walls.rend(); ++it) acc = apply_wall_crossing(acc, *it, classes);
  TruncatedSeries lhs = acc.truncated(n_min, n_max, t_cap);
  auto diff = first_difference(lhs, rhs);
  return TelescopeResult{!diff.has_value(), std::move(diff), std::move(lhs), std::move(rhs)};
}

// ---------------------------------------------------------------------------
// MacMahon

/// Coefficients of M(q)^e = prod_{n >= 1} (1 - q^n)^{-n e} up to q^q_max.
inline std::vector<Integer> mac_mahon_coefficients(std::int64_t e, std::int64_t q_max) {
  if (q_max < 0) throw InputError("q_max must be nonnegative");
  const auto len = static_cast<std::size_t>(q_max) + 1;
  std::vector<Integer> c(len, 0);
  c[0] = 1;
  for (std::int64_t n = 1; n <= q_max; ++n) {
    const std::int64_t k = n * e;
    if (k == 0) continue;
    // Binomial series of (1 - x)^{-k} with x = q^n.
    std::vector<Integer> f(len, 0);
    Integer coef = 1;
    for (std::int64_t j = 0; j * n <= q_max; ++j) {
      f[static_cast<std::size_t>(j * n)] = coef;
      coef = coef * (k + j) / (j + 1);
    }
    std::vector<Integer> next(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; i + j < len; ++j)
        if (f[j] != 0) next[i + j] += c[i] * f[j];
    }
    c = std::move(next);
  }
  return c;
}

inline TruncatedSeries mac_mahon(std::int64_t e, std::int64_t q_max, std::size_t classes = 0, std::int64_t t_cap = 0,
                                 std::int64_t n_min = 0) {
  const auto c = mac_mahon_coefficients(e, q_max);
  TruncatedSeries s(classes, std::min<std::int64_t>(n_min, 0), q_max, t_cap);
  const Weight zero(classes, 0);
  for (std::size_t i = 0; i < c.size(); ++i) s.add(zero, static_cast<std::int64_t>(i), Rational(c[i]));
  // Every factor with e != 0 has infinitely many terms above q_max.
  if (e != 0) s.add(zero, q_max + 1, 1);
  return s;
}

/// I = M(q)^e * P, slice by slice in the curve weight.
inline TruncatedSeries dtpt_transform(const TruncatedSeries& p, std::int64_t e) {
  if (p.lost_below())
    throw PreconditionError("the q-window cuts the PT series from below; the transform needs its full lower support");
  if (p.is_zero()) return p;
  const std::int64_t q_max = std::max<std::int64_t>(0, p.n_max() - *p.min_n());
  return series_mul(mac_mahon(e, q_max, p.classes(), p.t_cap(), p.n_min()), p);
}

/// Dump order: total weight, then weight vector, then n.
inline std::vector<std::string> dump_lines(const TruncatedSeries& s) {
  std::vector<std::string> out;
  for (const auto& [k, v] : s.terms())
    out.push_back("t^" + to_string(k.beta) + " q^" + std::to_string(k.n) + ": " + to_string(v));
  return out;
}

}  // namespace qmmp
