#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace prodset {

using Rational = boost::rational<int64_t>;

inline int64_t floor_of(const Rational& q) {
  const int64_t n = q.numerator(), d = q.denominator();
  int64_t f = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --f;
  return f;
}

inline double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

/// "p/q" form; integers print without a denominator.
inline std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

}  // namespace prodset
