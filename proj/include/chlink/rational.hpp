#pragma once

#include <gmpxx.h>

#include <string>

namespace chlink {

// Exact arbitrary-precision rational coefficients.  All series arithmetic in
// this library is exact; floating point never appears.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// "p" when the denominator is 1, otherwise "p/q" (q > 0, sign on p).
inline std::string rational_text(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace chlink
