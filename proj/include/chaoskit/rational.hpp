#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace chaoskit {

// Exact rational arithmetic for the interval engine. GMP keeps every value
// canonical (reduced, positive denominator).
using Rational = mpq_class;

// num/den in lowest terms. gmpxx's two-argument constructor does not reduce,
// and unreduced values compare incorrectly. DomainError when den == 0.
Rational make_rational(const mpz_class& num, const mpz_class& den);

// Accepts "p/q", integers and finite decimals ("-0.125", "1e-4").
// Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

// Exact conversion of a finite binary64 value.
Rational from_double(double x);

}  // namespace chaoskit
