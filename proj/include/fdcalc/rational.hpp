#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "fdcalc/errors.hpp"

namespace fdcalc {

// Exact arbitrary-precision rational scalar. boost keeps the canonical form
// (gcd(num, den) = 1, den > 0) after every operation, so equality is a plain
// component compare.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q" or "p" (ASCII digits, optional leading '-' on either part).
// Round-trips exactly with rational_str. Throws DomainError on anything else,
// including q = 0.
Rational parse_rational(std::string_view text);

// Canonical text form: "p/q", or just "p" when the denominator is 1.
std::string rational_str(const Rational& r);

// Like parse_rational but additionally accepts plain decimal text, converted
// exactly via powers of ten ("-2.75" -> -11/4).
Rational parse_number(std::string_view text);

double to_double(const Rational& r);

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline bool is_nonpositive_integer(const Rational& r) {
    return is_integer(r) && numerator(r) <= 0;
}

BigInt floor_big(const Rational& r);
BigInt ceil_big(const Rational& r);

// Narrowing helpers for lattice index arithmetic. Desk-scale grids keep these
// in range; anything else is a caller bug surfaced as DomainError.
long to_long(const BigInt& n);
inline long floor_long(const Rational& r) { return to_long(floor_big(r)); }
inline long ceil_long(const Rational& r) { return to_long(ceil_big(r)); }

// r must be an integer; returns it as long.
long integer_value(const Rational& r);

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// base^exp for integer exp (negative allowed; 0^negative is a DomainError).
Rational pow_int(const Rational& base, long exp);

}  // namespace fdcalc
