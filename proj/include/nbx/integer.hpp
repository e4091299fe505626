#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace nbx {

// Exact integers for counts, volumes and bounds. Values such as 2^d or
// sum 2^i C(d,i) outgrow 64 bits quickly once d passes ~40.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer pow2(std::size_t e) {
  Integer r = 1;
  r <<= static_cast<unsigned>(e);
  return r;
}

inline Integer binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Integer r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

// Floor of a rational; boost keeps the denominator positive.
inline Integer floor(const Rational& q) {
  Integer num = boost::multiprecision::numerator(q);
  Integer den = boost::multiprecision::denominator(q);
  if (num >= 0) return num / den;
  return -((-num + den - 1) / den);
}

inline Integer ceil(const Rational& q) { return -floor(-q); }

// The rounding used by the refined bounds: round_below(x) = ceil(x - 1),
// i.e. the largest integer strictly below x.
inline Integer round_below(const Rational& q) { return ceil(q - 1); }

inline std::string to_string(const Integer& v) { return v.str(); }

// Narrowing with a range check; used where a value must index memory.
inline std::uint64_t to_u64(const Integer& v) {
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("integer does not fit in 64 bits: " + v.str());
  return v.convert_to<std::uint64_t>();
}

}  // namespace nbx
