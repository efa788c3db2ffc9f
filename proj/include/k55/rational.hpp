#pragma once

#include <gmpxx.h>

#include <string>

namespace k55::linalg {

// Exact rationals are GMP's mpq_class; it keeps the canonical form
// (reduced, positive denominator) we rely on for byte-stable printing.
using Rational = mpq_class;

inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();  // mpq_class(n, d) does not canonicalize on its own
  return r;
}

inline Rational rational_from_string(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_zero(const Rational& a) { return sgn(a) == 0; }
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }

}  // namespace k55::linalg
