#pragma once

// Exact integer and rational helpers shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace hcube {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "a/b", an integer, or a finite decimal such as "0.75" into an exact
/// rational. Throws InputError on anything else.
Rational parse_rational(std::string_view text);

/// "a/b" in lowest terms, or "a" when the denominator is 1.
std::string to_string(const Rational& value);

BigInt ipow(const BigInt& base, std::uint64_t exponent);
Rational rpow(const Rational& base, std::int64_t exponent);

BigInt floor(const Rational& value);
BigInt ceil(const Rational& value);

long double to_long_double(const Rational& value);

/// Natural logarithm of a positive integer or rational of any size.
long double log_big(const BigInt& value);
long double log_rational(const Rational& value);
long double log_base(const Rational& value, long double base);

/// Smallest integer k with base^k >= value, decided exactly. value > 0.
std::int64_t ceil_log(const Rational& value, const Rational& base);
/// Largest integer k with base^k <= value, decided exactly. value > 0.
std::int64_t floor_log(const Rational& value, const Rational& base);

/// Returns j when value == base^j exactly for some integer j.
bool exact_power(const Rational& value, const Rational& base, std::int64_t& j);

std::int64_t to_int64(const BigInt& value);

}  // namespace hcube
