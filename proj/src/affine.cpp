#include "fatpoint/affine.hpp"

#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fatpoint {

AffineValue& AffineValue::operator+=(const AffineValue& o) {
  slope += o.slope;
  intercept += o.intercept;
  return *this;
}

AffineValue& AffineValue::operator-=(const AffineValue& o) {
  slope -= o.slope;
  intercept -= o.intercept;
  return *this;
}

AffineValue& AffineValue::operator*=(const Integer& c) {
  slope *= c;
  intercept *= c;
  return *this;
}

AffineValue operator+(AffineValue a, const AffineValue& b) { return a += b; }
AffineValue operator-(AffineValue a, const AffineValue& b) { return a -= b; }
AffineValue operator*(AffineValue a, const Integer& c) { return a *= c; }
AffineValue operator*(const Integer& c, AffineValue a) { return a *= c; }

std::string AffineValue::str() const {
  std::ostringstream os;
  if (slope == 0) {
    os << intercept;
    return os.str();
  }
  if (slope == 1) {
    os << "m";
  } else if (slope == -1) {
    os << "-m";
  } else {
    os << slope << "m";
  }
  if (intercept > 0) {
    os << "+" << intercept;
  } else if (intercept < 0) {
    os << intercept;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const AffineValue& v) { return os << v.str(); }

const char* to_string(Sign s) {
  switch (s) {
    case Sign::Negative:
      return "Negative";
    case Sign::Zero:
      return "Zero";
    case Sign::Positive:
      return "Positive";
  }
  return "?";
}

Integer floor_div(const Integer& a, const Integer& b) {
  if (b == 0) throw std::domain_error("floor_div: division by zero");
  Integer q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) { return -floor_div(-a, b); }

EventualSign eventual_sign(const AffineValue& v) {
  if (v.slope == 0) {
    Sign s = v.intercept > 0 ? Sign::Positive : (v.intercept < 0 ? Sign::Negative : Sign::Zero);
    return {s, 1};
  }
  // slope*m + intercept has the slope's sign exactly when m > -intercept/slope.
  Integer m0 = floor_div(-v.intercept, v.slope) + 1;
  if (m0 < 1) m0 = 1;
  return {v.slope > 0 ? Sign::Positive : Sign::Negative, m0};
}

Integer nonnegative_from(const AffineValue& v) {
  if (v.slope == 0) return v.intercept >= 0 ? Integer(1) : Integer(0);
  if (v.slope < 0) return 0;
  Integer m0 = ceil_div(-v.intercept, v.slope);
  return m0 < 1 ? Integer(1) : m0;
}

Integer nonpositive_from(const AffineValue& v) { return nonnegative_from(-v); }

std::strong_ordering eventual_compare(const AffineValue& a, const AffineValue& b) {
  if (a.slope != b.slope) return a.slope < b.slope ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.intercept != b.intercept)
    return a.intercept < b.intercept ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Integer binomial(const Integer& n, const Integer& k) {
  if (k < 0 || n < 0 || k > n) throw std::out_of_range("binomial: requires 0 <= k <= n");
  Integer kk = k;
  if (kk > n - kk) kk = n - kk;
  Integer result = 1;
  for (Integer i = 1; i <= kk; ++i) {
    result *= n - kk + i;
    result /= i;
  }
  return result;
}

Integer binomial(std::int64_t n, std::int64_t k) { return binomial(Integer(n), Integer(k)); }

std::uint64_t integer_root(std::uint64_t s, int n) {
  if (n < 1) throw std::invalid_argument("integer_root: exponent must be positive");
  auto fits = [&](std::uint64_t base) {
    Integer acc = 1;
    for (int i = 0; i < n && acc <= s; ++i) acc *= base;
    return acc <= s;
  };
  // Binary search on [0, s]; k^n grows fast so the range shrinks quickly.
  std::uint64_t lo = 0, hi = s;
  while (lo < hi) {
    std::uint64_t mid = lo + (hi - lo) / 2 + 1;  // (hi - lo + 1) overflows on the full range
    if (fits(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::int64_t to_int64(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("value does not fit in 64 bits: " + v.str());
  return static_cast<std::int64_t>(v);
}

}  // namespace fatpoint
