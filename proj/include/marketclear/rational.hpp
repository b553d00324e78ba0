#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace marketclear {

// Exact rational scalar used for every valuation, price, and payoff.
// cpp_rational keeps the canonical reduced form: denominator > 0,
// gcd(|num|, den) = 1, zero stored as 0/1. No operation ever rounds.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "a", "a/b", or a finite decimal like "-1.25". Leading sign on the
// numerator only; no exponents, no whitespace inside the token. Throws
// ParseError on anything else (including zero denominators).
Rational parse_rational(std::string_view text);

// "a/b" for non-integers, plain "a" otherwise. parse_rational(to_string(r)) == r.
std::string to_string(const Rational& r);

}  // namespace marketclear
