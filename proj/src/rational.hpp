#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace l2t {

// Exact scalar. mpq_class keeps values reduced with a positive denominator as
// long as every construction path goes through canonicalize().
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (decimal digits only). Throws Error{Schema} on
/// malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Inverse of parse_rational: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

Rational factorial(unsigned n);

Rational pow(const Rational& base, unsigned exponent);

inline double to_double(const Rational& r) { return r.get_d(); }
/// Nearest double plus the double nearest the remainder.
inline long double to_long_double(const Rational& r) {
    const double hi = r.get_d();
    const Rational rest = r - Rational(hi);
    return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

}  // namespace l2t
