#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace fatpoint {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// An integer-linear function slope*m + intercept of the symbolic parameter m.
// Every degree and multiplicity in a parametric linear system is one of these;
// concrete values are the slope-zero case.
struct AffineValue {
  Integer slope = 0;
  Integer intercept = 0;

  AffineValue() = default;
  AffineValue(Integer s, Integer i) : slope(std::move(s)), intercept(std::move(i)) {}

  static AffineValue constant(Integer c) { return AffineValue(0, std::move(c)); }

  Integer at(const Integer& m) const { return slope * m + intercept; }
  bool is_constant() const { return slope == 0; }

  friend bool operator==(const AffineValue&, const AffineValue&) = default;

  AffineValue operator-() const { return AffineValue(-slope, -intercept); }
  AffineValue& operator+=(const AffineValue& o);
  AffineValue& operator-=(const AffineValue& o);
  AffineValue& operator*=(const Integer& c);

  // Renders as e.g. "5m", "4m-3", "-m-3", "7".
  std::string str() const;
};

AffineValue operator+(AffineValue a, const AffineValue& b);
AffineValue operator-(AffineValue a, const AffineValue& b);
AffineValue operator*(AffineValue a, const Integer& c);
AffineValue operator*(const Integer& c, AffineValue a);
std::ostream& operator<<(std::ostream& os, const AffineValue& v);

inline AffineValue affine_add(const AffineValue& a, const AffineValue& b) { return a + b; }

enum class Sign { Negative, Zero, Positive };

const char* to_string(Sign s);

// The sign a value takes for every m >= threshold. threshold is the least such
// m >= 1.
struct EventualSign {
  Sign sign = Sign::Zero;
  Integer threshold = 1;

  friend bool operator==(const EventualSign&, const EventualSign&) = default;
};

EventualSign eventual_sign(const AffineValue& v);

// Least m0 >= 1 such that v(m) >= 0 for every m >= m0, or 0 when v is
// eventually negative.
Integer nonnegative_from(const AffineValue& v);

// Least m0 >= 1 such that v(m) <= 0 for every m >= m0, or 0 when v is
// eventually positive.
Integer nonpositive_from(const AffineValue& v);

// Order of the values for all sufficiently large m. This is lexicographic
// order on (slope, intercept).
std::strong_ordering eventual_compare(const AffineValue& a, const AffineValue& b);

inline bool eventually_positive(const AffineValue& v) {
  return eventual_sign(v).sign == Sign::Positive;
}
inline bool eventually_negative(const AffineValue& v) {
  return eventual_sign(v).sign == Sign::Negative;
}

// Floor division for arbitrary-precision integers (rounds toward -infinity).
Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);

// Exact binomial coefficient C(n, k). Throws std::out_of_range unless
// 0 <= k <= n.
Integer binomial(const Integer& n, const Integer& k);
Integer binomial(std::int64_t n, std::int64_t k);

// Largest k with k^n <= s, for n >= 1.
std::uint64_t integer_root(std::uint64_t s, int n);

// Checked narrowing used where a value must fit machine arithmetic.
std::int64_t to_int64(const Integer& v);

}  // namespace fatpoint
