#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace birkhoff {

// Arbitrary precision integers and rationals. mpq_class keeps values in
// lowest terms with a positive denominator.
using Integer = mpz_class;
using Rational = mpq_class;

/// num/den in lowest terms. Throws PreconditionError when den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p", "p/q" or a finite decimal such as "-0.25". Throws ParseError.
Rational parse_rational(std::string_view text);

/// Parses a decimal integer. Throws ParseError.
Integer parse_integer(std::string_view text);

/// Always "num/den", also for integers ("3/1").
std::string to_fraction_string(const Rational& r);

/// "num" for integers and "num/den" otherwise.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

Integer floor(const Rational& r);
Integer ceil(const Rational& r);
int sign(const Rational& r);
int sign(const Integer& z);
Rational abs(const Rational& r);

inline Rational to_rational(const Integer& z) { return Rational(z); }
inline Rational to_rational(std::int64_t v) { return Rational(Integer(static_cast<long>(v))); }
inline Integer to_integer(std::int64_t v) { return Integer(static_cast<long>(v)); }

/// Converts to int64, throwing OutOfRangeError when it does not fit.
std::int64_t to_int64(const Integer& z);

Integer gcd(const Integer& a, const Integer& b);

}  // namespace birkhoff
