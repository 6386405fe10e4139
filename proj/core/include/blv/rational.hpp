#pragma once

#include <gmpxx.h>

#include <string>

namespace blv {

// Exact rational scalar backing kernels, measures and the LP layer.
using Rational = mpq_class;

inline Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p/q", plain integers, and decimal literals such as "0.25"
// (converted exactly). Throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& text);

// Canonical "p" or "p/q" form.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

bool is_integer(const Rational& q);

// Exact binomial coefficient; throws std::overflow_error if the value
// does not fit in long long.
long long binomial(int n, int k);

}  // namespace blv
