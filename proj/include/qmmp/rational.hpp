#pragma once

// Exact rational and Gaussian-rational arithmetic.

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "qmmp/errors.hpp"

namespace qmmp {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw InputError("zero denominator");
  return Rational(num, den);
}

// Canonical text form: "p/q" with q > 0, or "p" when q == 1.
inline std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace detail {

inline bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

inline Integer parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) throw InputError("not an integer: '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace detail

// Accepts "p", "p/q". Decimal notation is rejected on purpose: all numeric
// input is exact.
inline Rational parse_rational(std::string_view s) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_integer(s));
  const Integer num = detail::parse_integer(s.substr(0, slash));
  const Integer den = detail::parse_integer(s.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + std::string(s) + "'");
  return Rational(num, den);
}

inline int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

/// A complex number with rational real and imaginary parts.
struct Gaussian {
  Rational re;
  Rational im;

  Gaussian() = default;
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  Gaussian conj() const { return {re, -im}; }

  friend Gaussian operator+(const Gaussian& a, const Gaussian& b) { return {a.re + b.re, a.im + b.im}; }
  friend Gaussian operator-(const Gaussian& a, const Gaussian& b) { return {a.re - b.re, a.im - b.im}; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Gaussian operator*(const Rational& s, const Gaussian& a) { return {s * a.re, s * a.im}; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }

  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
};

inline std::string to_string(const Gaussian& z) { return to_string(z.re) + (z.im < 0 ? "" : "+") + to_string(z.im) + "i"; }

}  // namespace qmmp
