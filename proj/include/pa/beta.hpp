#pragma once

// Gödel's beta function and the Chinese-remainder coding of finite sequences.

#include <cstdint>
#include <span>
#include <vector>

#include "pa/nat.hpp"

namespace pa {

// A pair (n, d) coding the sequence beta(n, d, 0), beta(n, d, 1), ...
// Produced by encode_seq with d = l! where l is at least the sequence length.
struct BetaPair {
  Nat n;
  Nat d;

  friend bool operator==(const BetaPair&, const BetaPair&) = default;
};

// The remainder of x1 on division by 1 + (x3 + 1) * x2.
Nat beta(const Nat& x1, const Nat& x2, const Nat& x3);

// The modulus 1 + (i + 1) * d used by beta for index i.
Nat beta_modulus(const Nat& d, const Nat& i);

// Codes a non-empty sequence f_0 ... f_{k-1}: l = max(k, f_0, ..., f_{k-1}),
// d = l!, and n is the least natural with n = f_i (mod 1 + (i + 1) d) for
// every i < k. Throws std::invalid_argument for an empty sequence and
// std::overflow_error when l! is out of reach.
BetaPair encode_seq(std::span<const Nat> values);

// beta(n, d, i) for i < length.
std::vector<Nat> decode_seq(const BetaPair& pair, std::size_t length);

// Whether the moduli 1 + (i + 1) l! for i < k are pairwise coprime.
bool moduli_coprime_check(std::uint64_t l, std::uint64_t k);

// Largest l for which encode_seq will compute l!.
inline constexpr std::uint64_t kMaxFactorialArgument = 1'000'000;

}  // namespace pa
