#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace contexture {

// The only numeric scalar in the core. mpq_class keeps values canonical
// (reduced, positive denominator) through all arithmetic.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_negative(const Rational& q) { return sgn(q) < 0; }

inline Rational rational_abs(const Rational& q) { return abs(q); }

// Parses "p", "p/q" or an exact decimal like "0.425" (= 425/1000 reduced).
// Never round-trips through binary floating point.
Rational parse_rational(const std::string& text);

// Canonical "p" or "p/q" form.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

}  // namespace contexture
