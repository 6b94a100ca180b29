#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tropk {

using Rational = mpq_class;
using Integer = mpz_class;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p" or "p/q". With allow_decimal, "1.25" is accepted and
/// converted exactly (5/4); float syntax is rejected otherwise.
Rational parse_rational(std::string_view text, bool allow_decimal = false);

/// Canonical "p/q" form, or "p" when q == 1.
std::string to_string(const Rational& x);

Integer lcm(const Integer& a, const Integer& b);

/// Returns x as an int64, throwing if x is not an integer in range.
std::int64_t to_int64(const Rational& x);

}  // namespace tropk
