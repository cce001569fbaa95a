#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace idealscan {

// All certificate arithmetic is exact: arbitrary-precision integers for
// minors, rationals for rotation numbers. No floating point on these paths.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// gcd of the absolute values of a vector; 0 for the zero vector.
inline BigInt vector_gcd(const std::vector<BigInt>& v) {
  BigInt g = 0;
  for (const BigInt& x : v) g = boost::multiprecision::gcd(g, x);
  return boost::multiprecision::abs(g);
}

/// Fractional part in [0, 1).
inline Rational frac(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);  // den > 0
  BigInt fl = num / den;
  if (num < 0 && fl * den != num) fl -= 1;
  return r - Rational(fl);
}

/// Render as "p/q" with q > 0, e.g. "0/1", "1/6", "-3/1".
inline std::string fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline bool fits_int64(const BigInt& x) {
  return x >= std::numeric_limits<std::int64_t>::min() &&
         x <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace idealscan
