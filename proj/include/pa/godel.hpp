#pragma once

// Gödel numbering of formulas and of finite formula sequences.
//
// Symbol codes: 0 -> 1, S -> 2, ~ -> 3, -> -> 4, A -> 5, = -> 6, + -> 7,
// * -> 8, x_k -> 8 + k. A formula is written as its prefix-order symbol string
// s_1 ... s_m and numbered p_1^code(s_1) * ... * p_m^code(s_m) over the
// consecutive primes p_1 = 2, p_2 = 3, ... A sequence of codes g_1 ... g_n is
// numbered p_1^g_1 * ... * p_n^g_n.
//
// Sequence numbers outgrow memory almost at once (a one-line proof already has
// an exponent near 10^24), so a GodelNumber is held in one of two canonical
// forms: the plain value while it has fewer than kMaterializeBits bits, and
// otherwise its exponent vector over consecutive primes. Both forms denote the
// same natural number; which one is used depends only on that number.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pa/nat.hpp"
#include "pa/syntax.hpp"

namespace pa {

struct CodecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class GodelNumber {
 public:
  static constexpr std::size_t kMaterializeBits = 1u << 16;

  // Throws CodecError for 0.
  static GodelNumber from_value(Nat value);
  // The product of nth_prime(i)^exponents[i].
  static GodelNumber from_exponents(std::vector<GodelNumber> exponents);
  static GodelNumber from_exponents(const std::vector<std::uint32_t>& exponents);

  bool materialized() const noexcept { return materialized_; }
  // Throws std::logic_error unless materialized().
  const Nat& value() const;

  // Exponents over 2, 3, 5, ... up to the last prime factor, or an empty
  // vector when the number is not a product of consecutive primes each
  // dividing it at least once.
  std::vector<GodelNumber> prime_exponents() const;

  std::optional<std::uint64_t> small_value() const;

  // Decimal when materialized, otherwise "2^e1*3^e2*..." with exponents
  // parenthesized when they are themselves in factored form.
  std::string to_string() const;
  static GodelNumber parse(std::string_view text);

  friend bool operator==(const GodelNumber& a, const GodelNumber& b);

 private:
  GodelNumber() = default;
  Nat value_ = 1;
  std::vector<GodelNumber> exponents_;
  bool materialized_ = true;
};

std::vector<std::uint32_t> symbol_codes(const Formula& f);
// Rebuilds a formula from its prefix symbol string; CodecError when ill-formed.
Formula formula_from_symbols(const std::vector<std::uint32_t>& codes);

GodelNumber encode_formula(const Formula& f);
Formula decode_formula(const GodelNumber& g);

GodelNumber encode_sequence(const std::vector<GodelNumber>& items);
std::vector<GodelNumber> decode_sequence(const GodelNumber& g);

}  // namespace pa
