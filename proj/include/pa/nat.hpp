#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace pa {

// Natural numbers of unbounded size. Every value handled by the toolkit is
// non-negative; callers never construct negative Nats.
using Nat = boost::multiprecision::mpz_int;

// Parses a non-empty string of decimal digits.
Nat parse_nat(std::string_view text);

std::string to_string(const Nat& n);

// Narrows to 64 bits, throwing std::overflow_error when the value does not fit.
std::uint64_t to_u64(const Nat& n);

bool fits_u64(const Nat& n);

Nat factorial(std::uint64_t n);

// Zero-based: nth_prime(0) == 2. Thread-safe; the table grows on demand.
std::uint64_t nth_prime(std::size_t index);

}  // namespace pa
