#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mgof::num {

// Exact, always-reduced rational with arbitrary-precision parts.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

Rational make_rational(long long numerator, long long denominator);
// Accepts "p/q", "p" or a finite decimal such as "0.85".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);  // "7/15", or "3" for integers
double to_double(const Rational& q);

}  // namespace mgof::num
