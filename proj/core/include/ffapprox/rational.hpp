#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace ffapprox {

using Rational = boost::rational<std::int64_t>;

inline std::int64_t floor_q(const Rational& x) {
  std::int64_t n = x.numerator(), d = x.denominator();  // d > 0
  std::int64_t f = n / d;
  if (n % d != 0 && n < 0) --f;
  return f;
}

inline std::int64_t ceil_q(const Rational& x) { return -floor_q(-x); }

inline bool is_integer(const Rational& x) { return x.denominator() == 1; }

inline std::string to_string(const Rational& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

// Accepts "n" or "n/d"; throws InputError otherwise.
Rational parse_rational(const std::string& text);

}  // namespace ffapprox
