#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace gaugelab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed text
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when q == 1.
std::string format_rational(const Rational& q);

/// Natural log of |q|; -inf for zero. Safe for numerators and denominators far
/// outside the double range.
double log_abs(const Rational& q);
double log_abs(const BigInt& n);

double to_double(const Rational& q);

}  // namespace gaugelab
