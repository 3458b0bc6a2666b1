#pragma once

// Central charges, walls for primitive dimension vectors, and the perturbed
// charge pairs used on either side of a wall.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmmp/quiver.hpp"
#include "qmmp/rational.hpp"

namespace qmmp {

/// One upper-half-plane value per vertex, aligned with the quiver's vertex
/// order. Every imaginary part is strictly positive.
class CentralCharge {
 public:
  CentralCharge() = default;
  explicit CentralCharge(std::vector<Gaussian> values) : values_(std::move(values)) {
    for (const auto& z : values_)
      if (z.im <= 0) throw InputError("central charge " + to_string(z) + " is not in the upper half-plane");
  }

  std::size_t size() const noexcept { return values_.size(); }
  const Gaussian& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Gaussian>& values() const noexcept { return values_; }

  CentralCharge scaled(const Rational& s) const {
    if (s <= 0) throw InputError("scale must be positive");
    std::vector<Gaussian> v;
    for (const auto& z : values_) v.push_back(s * z);
    return CentralCharge(std::move(v));
  }

  friend bool operator==(const CentralCharge&, const CentralCharge&) = default;

 private:
  std::vector<Gaussian> values_;
};

/// Z(m) = sum_i m_i xi_i.
inline Gaussian charge(const CentralCharge& xi, const DimVector& m) {
  if (xi.size() != m.size()) throw InputError("charge and dimension vector are indexed differently");
  Gaussian z{0, 0};
  for (std::size_t i = 0; i < m.size(); ++i) z += Rational(m[i]) * xi[i];
  return z;
}

/// Unordered decomposition m = m1 + m2, stored with m1 < m2 lexicographically.
struct Wall {
  DimVector m1;
  DimVector m2;

  friend bool operator==(const Wall&, const Wall&) = default;
  friend auto operator<=>(const Wall& a, const Wall& b) {
    if (auto c = a.m1 <=> b.m1; c != 0) return c;
    return a.m2 <=> b.m2;
  }
};

inline Wall make_wall(DimVector a, DimVector b) {
  if (a.size() != b.size()) throw InputError("wall parts are indexed differently");
  if (a.is_zero() || b.is_zero()) throw InputError("wall parts must be nonzero");
  if (a == b) throw InputError("wall parts are proportional");
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

inline std::uint64_t expected_wall_count(const DimVector& m) {
  std::uint64_t p = 1;
  for (auto e : m.entries()) p *= static_cast<std::uint64_t>(e + 1);
  return (p - 2) / 2;
}

/// All unordered decompositions of a primitive m into two nonzero parts.
inline std::vector<Wall> enumerate_walls(const DimVector& m) {
  if (m.is_zero() || !m.is_primitive())
    throw InputError("walls are enumerated for primitive dimension vectors only; got " + to_string(m));
  std::vector<Wall> walls;
  std::vector<std::int64_t> part(m.size(), 0);
  // Odometer over 0 <= part <= m; the last coordinate moves fastest, so parts
  // come out in lexicographic order.
  while (true) {
    DimVector m1(part);
    if (!m1.is_zero() && m1 != m) {
      DimVector m2 = m - m1;
      if (m1 < m2) walls.push_back({m1, m2});
    }
    std::size_t k = m.size();
    while (k > 0) {
      --k;
      if (part[k] < m[k]) {
        ++part[k];
        break;
      }
      part[k] = 0;
      if (k == 0) return walls;
    }
  }
}

namespace detail {
inline Gaussian wall_product(const CentralCharge& xi, const Wall& w) { return charge(xi, w.m1) * charge(xi, w.m2).conj(); }
}  // namespace detail

/// Z(m1) lies on the open ray through Z(m2).
inline bool on_wall(const CentralCharge& xi, const Wall& w) {
  const Gaussian p = detail::wall_product(xi, w);
  return p.im == 0 && p.re > 0;
}

/// Sign of Im(Z(m1) * conj Z(m2)): +1 when Z(m1) has the larger phase.
inline int wall_side(const CentralCharge& xi, const Wall& w) { return sign(detail::wall_product(xi, w).im); }

/// Two decompositions of the same m cut out the same hypersurface in charge
/// space iff m1 ^ m is proportional for both (m2 = m - m1).
inline bool walls_coincide(const Wall& a, const Wall& b) {
  const DimVector m = a.m1 + a.m2;
  if (b.m1 + b.m2 != m) return false;
  const std::size_t n = m.size();
  auto wedge = [&](const DimVector& x) {
    std::vector<std::int64_t> w;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) w.push_back(x[i] * m[j] - x[j] * m[i]);
    return w;
  };
  const auto wa = wedge(a.m1), wb = wedge(b.m1);
  // Proportional: all 2x2 minors vanish.
  for (std::size_t i = 0; i < wa.size(); ++i)
    for (std::size_t j = i + 1; j < wa.size(); ++j)
      if (wa[i] * wb[j] != wa[j] * wb[i]) return false;
  return true;
}

/// Per-wall report entry.
struct WallStatus {
  Wall wall;
  std::optional<bool> on_wall;
  std::optional<int> side;
  std::vector<std::size_t> coincides_with;  // indices of other walls with the same locus
};

inline std::vector<WallStatus> wall_report(const DimVector& m, const std::optional<CentralCharge>& xi) {
  const auto walls = enumerate_walls(m);
  std::vector<WallStatus> out;
  for (std::size_t i = 0; i < walls.size(); ++i) {
    WallStatus s{walls[i], std::nullopt, std::nullopt, {}};
    if (xi) {
      s.on_wall = on_wall(*xi, walls[i]);
      s.side = wall_side(*xi, walls[i]);
    }
    for (std::size_t j = 0; j < walls.size(); ++j)
      if (j != i && walls_coincide(walls[i], walls[j])) s.coincides_with.push_back(j);
    out.push_back(std::move(s));
  }
  return out;
}

/// Imaginary-part candidates 1, 1+1/3, 1-1/3, 1+1/5, 1-1/5, ...
inline Rational perturbation_value(std::size_t k) {
  if (k == 0) return 1;
  const std::int64_t r = static_cast<std::int64_t>((k + 1) / 2);
  const Rational delta(1, 2 * r + 1);
  return k % 2 == 1 ? Rational(1) + delta : Rational(1) - delta;
}

inline constexpr std::size_t kFlopChargeBudget = 256;

/// Result of a charge search that ran out of candidates.
class ChargeSearchFailed : public PreconditionError {
 public:
  ChargeSearchFailed(const std::string& what, std::vector<Wall> blocking)
      : PreconditionError(what), blocking_(std::move(blocking)) {}
  const std::vector<Wall>& blocking_walls() const noexcept { return blocking_; }

 private:
  std::vector<Wall> blocking_;
};

/// Charges xi+ and xi- with Re(xi+_i) = rho_i = -Re(xi-_i) and common imaginary
/// parts, chosen so that neither lies on a wall of m.
///
/// Candidate k assigns vertex j the imaginary part perturbation_value(k*(j+1)
/// mod 257). Candidate 0 is the constant assignment 1.
inline std::pair<CentralCharge, CentralCharge> flop_charges(const Quiver& q, const DimVector& m,
                                                            const std::vector<std::int64_t>& rho) {
  check_indexed(q, m);
  if (rho.size() != q.size()) throw InputError("rho is indexed differently from the quiver");
  if (!is_symmetric(q)) throw PreconditionError("flop charges require a symmetric quiver");
  if (!m.is_primitive()) throw InputError("flop charges require a primitive dimension vector");
  bool all_zero = true;
  std::int64_t balance = 0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    all_zero = all_zero && rho[i] == 0;
    balance += m[i] * rho[i];
  }
  if (all_zero) throw InputError("rho must be nonzero");
  if (balance != 0) throw InputError("rho must satisfy sum_i m_i rho_i = 0");

  const auto walls = enumerate_walls(m);
  std::vector<Wall> blocking;
  // If rho pairs to zero with m1, both charges on the wall are imaginary.
  for (const auto& w : walls) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < rho.size(); ++i) s += w.m1[i] * rho[i];
    if (s == 0) blocking.push_back(w);
  }
  if (!blocking.empty()) {
    const std::string what = "rho vanishes on " + to_string(blocking.front().m1) + ": every charge lies on that wall";
    throw ChargeSearchFailed(what, std::move(blocking));
  }
  for (std::size_t k = 0; k < kFlopChargeBudget; ++k) {
    std::vector<Gaussian> plus, minus;
    for (std::size_t j = 0; j < q.size(); ++j) {
      const Rational im = perturbation_value((k * (j + 1)) % 257);
      plus.emplace_back(Rational(rho[j]), im);
      minus.emplace_back(Rational(-rho[j]), im);
    }
    CentralCharge xp(std::move(plus)), xm(std::move(minus));
    blocking.clear();
    for (const auto& w : walls)
      if (on_wall(xp, w) || on_wall(xm, w)) blocking.push_back(w);
    if (blocking.empty()) return {std::move(xp), std::move(xm)};
  }
  throw ChargeSearchFailed("no off-wall imaginary parts found within " + std::to_string(kFlopChargeBudget) +
                               " candidates",
                           std::move(blocking));
}

/// xi_i = sqrt(-1) on base vertices; xi+_0 = -theta + i, xi-_0 = theta + i at
/// the framing vertex.
inline std::pair<CentralCharge, CentralCharge> star_charges(const Quiver& qstar, const VertexId& framing,
                                                            const Rational& theta) {
  if (theta <= 0) throw InputError("theta must be positive");
  const std::size_t f = qstar.index_of(framing);
  std::vector<Gaussian> plus(qstar.size(), Gaussian{0, 1}), minus(qstar.size(), Gaussian{0, 1});
  plus[f] = Gaussian{-theta, 1};
  minus[f] = Gaussian{theta, 1};
  return {CentralCharge(std::move(plus)), CentralCharge(std::move(minus))};
}

}  // namespace qmmp
