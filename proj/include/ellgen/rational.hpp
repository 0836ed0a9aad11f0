#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ellgen {

/// Exact rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "p/q" or "-p/q" (surrounding whitespace allowed).
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, integers printed without a denominator.
std::string to_string(const Rational& r);

/// Always "p/q", even for integers ("-1/1"); used by the JSON report.
std::string to_fraction_string(const Rational& r);

Rational factorial(unsigned n);

/// Exact 2^k for any integer k.
Rational power_of_two(int k);

} // namespace ellgen
