#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "joinery/error.hpp"

namespace joinery {

// Exact arithmetic substrate. mpq_class keeps the invariants we need:
// lowest terms, positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational(long num, long den = 1) {
  if (den == 0) fail(ErrorKind::invalid_input, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p", "p/q" (decimal-free), with optional leading '-'.
inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0)
    fail(ErrorKind::invalid_input, "bad rational literal: '" + text + "'");
  if (q.get_den() == 0)
    fail(ErrorKind::invalid_input, "zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

inline std::string format_rational(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline Integer integer_lcm(const Integer& a, const Integer& b) {
  return lcm(a, b);
}

inline Rational abs_rational(const Rational& q) { return abs(q); }

}  // namespace joinery
