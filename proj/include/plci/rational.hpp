// Exact rational arithmetic used throughout the oracle. Independence is
// decided by rational equality; no floating point is involved anywhere.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace plci {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Parses "0.05" -> 1/20, "1" -> 1, ".5" is rejected, "3/4" -> 3/4.
// Returns nullopt on malformed input.
std::optional<BigRat> parse_rational(const std::string& text);

// "num/den" (reduced); integers print without the "/1".
std::string rat_to_fraction(const BigRat& q);

// Exact decimal expansion when the reduced denominator is of the form
// 2^a * 5^b, otherwise falls back to "num/den". Parse round-trips.
std::string rat_to_decimal(const BigRat& q);

// Decimal approximation for human-readable reports, e.g. "0.1536".
std::string rat_approx(const BigRat& q, int digits = 6);

}  // namespace plci
