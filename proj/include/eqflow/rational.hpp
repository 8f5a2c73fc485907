#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace eqflow {

// Exact rationals. cpp_rational keeps every value in lowest terms with a
// positive denominator.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// Parses "a" or "a/b" (optional leading '-'). Returns nullopt on malformed
// input or a zero denominator.
inline std::optional<Rational> try_parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!digits(num) || !digits(den)) return std::nullopt;
  // Boost reads a leading 0 as an octal prefix.
  auto decimal = [](std::string_view s) {
    const auto first = s.find_first_not_of('0');
    return Integer{first == std::string_view::npos ? std::string("0") : std::string(s.substr(first))};
  };
  Integer n = decimal(num);
  Integer d = decimal(den);
  if (d == 0) return std::nullopt;
  if (negative) n = -n;
  return Rational(n, d);
}

inline Rational parse_rational(std::string_view text) {
  auto q = try_parse_rational(text);
  if (!q) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  return *q;
}

// Canonical text form: "a" for integers, "a/b" otherwise.
inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Integer lcm(const Integer& a, const Integer& b) {
  return boost::multiprecision::lcm(a, b);
}

inline Integer floor(const Rational& q) {
  Integer n = numerator(q), d = denominator(q);
  Integer f = n / d;  // truncates toward zero
  if (n < 0 && f * d != n) --f;
  return f;
}

inline Integer ceil(const Rational& q) { return -floor(-q); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// The rational with the smallest denominator in the closed interval
// [lo, hi] (Stern-Brocot descent via continued fractions). Among those,
// the one of smallest magnitude numerator. Requires 0 <= lo <= hi.
inline Rational simplest_between(Rational lo, Rational hi) {
  if (lo > hi) std::swap(lo, hi);
  if (lo < 0) throw std::invalid_argument("simplest_between: negative interval");
  const Integer fl = floor(lo);
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // Both ends share the integer part; recurse on reciprocals of the fractional parts.
  const Rational a = lo - Rational(fl), b = hi - Rational(fl);
  const Rational inner = simplest_between(Rational(1) / b, Rational(1) / a);
  return Rational(fl) + Rational(1) / inner;
}

// Infinite compares above every finite value. Arithmetic is limited to
// addition (a sum with an Infinite term is Infinite) and comparisons.
class Capacity {
 public:
  Capacity() = default;
  Capacity(Rational value) : value_(std::move(value)) {
    if (*value_ < 0) throw std::invalid_argument("capacity must be non-negative");
  }
  Capacity(int value) : Capacity(Rational(value)) {}

  static Capacity infinite() {
    Capacity c;
    c.value_.reset();
    return c;
  }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }

  const Rational& value() const {
    if (!value_) throw std::logic_error("value() on infinite capacity");
    return *value_;
  }

  friend Capacity operator+(const Capacity& a, const Capacity& b) {
    if (a.is_infinite() || b.is_infinite()) return infinite();
    return Capacity(*a.value_ + *b.value_);
  }
  Capacity& operator+=(const Capacity& other) { return *this = *this + other; }

  friend bool operator==(const Capacity& a, const Capacity& b) { return a.value_ == b.value_; }
  friend bool operator<(const Capacity& a, const Capacity& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return *a.value_ < *b.value_;
  }
  friend bool operator>(const Capacity& a, const Capacity& b) { return b < a; }
  friend bool operator<=(const Capacity& a, const Capacity& b) { return !(b < a); }
  friend bool operator>=(const Capacity& a, const Capacity& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Capacity& c) {
    return os << (c.is_infinite() ? std::string("inf") : to_string(*c.value_));
  }

 private:
  std::optional<Rational> value_{Rational(0)};
};

inline std::string to_string(const Capacity& c) {
  return c.is_infinite() ? std::string("inf") : to_string(c.value());
}

}  // namespace eqflow
