#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace odx {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses a JSON-style decimal ("12", "-0.25", "1e3", "2.5E-2") or a fraction
// "p/q" exactly. Throws Error(kParse) on malformed input.
Rational parse_rational(std::string_view text);

// Exact decimal when the denominator has only factors 2 and 5, "p/q" otherwise.
std::string to_string(const Rational& value);

bool is_terminating_decimal(const Rational& value);

// Nearest double, for reporting only.
double to_double(const Rational& value);


}  // namespace odx
