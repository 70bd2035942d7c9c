#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace cullen {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses a decimal integer with optional sign. Also accepts the shorthand
/// `<mantissa>e<exponent>` (e.g. "1e66", "25e3") as long as the value is an
/// integer.
BigInt parse_integer(std::string_view text);

std::string to_decimal(const BigInt& value);

BigInt from_u64(std::uint64_t value);

// Throws InvalidArgument if the value is negative or does not fit.
std::uint64_t to_u64(const BigInt& value);

BigInt pow(const BigInt& base, std::uint64_t exponent);

}  // namespace cullen
