#ifndef DYNCOMP_RATIONAL_HPP
#define DYNCOMP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace dyncomp {

// Exact rationals. The epsilon schedule of the greedy constructor halves at
// every step, so denominators outgrow 64 bits after a few dozen steps.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "p/q", "p" or "-p/q". Throws Error(kParseError) on malformed input or
// a zero denominator.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

// floor(value), saturated to the int64 range.
std::int64_t floor_saturated(const Rational& value);

// Largest integer strictly below value, saturated to the int64 range.
std::int64_t below_saturated(const Rational& value);

}  // namespace dyncomp

#endif  // DYNCOMP_RATIONAL_HPP
