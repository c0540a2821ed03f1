#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace polyangle {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/** Exact binomial coefficient C(n, k); zero when k < 0, k > n, or n < 0. */
Int binomial(int n, int k);

/** Build p/q without trusting any backend-specific canonicalization. */
Rational make_rational(const Int& num, const Int& den);

/**
 * Parse a rational written as "p" or "p/q" with an optional leading minus
 * sign. Throws std::invalid_argument on malformed input or zero denominator.
 */
Rational parse_rational(std::string_view text);

/** Canonical text form: "p" when the denominator is 1, otherwise "p/q". */
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

}  // namespace polyangle
