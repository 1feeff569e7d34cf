#include "pa/beta.hpp"

#include <algorithm>
#include <stdexcept>

namespace pa {

namespace {

// Inverse of a modulo m, for coprime a and m > 1.
Nat mod_inverse(const Nat& a, const Nat& m) {
  Nat old_r = a % m, r = m;
  Nat old_s = 1, s = 0;
  while (r != 0) {
    const Nat q = old_r / r;
    Nat tmp = old_r - q * r;
    old_r = std::move(r);
    r = std::move(tmp);
    tmp = old_s - q * s;
    old_s = std::move(s);
    s = std::move(tmp);
  }
  if (old_r != 1) throw std::logic_error("moduli are not coprime");
  Nat inv = old_s % m;
  if (inv < 0) inv += m;
  return inv;
}

}  // namespace

Nat beta_modulus(const Nat& d, const Nat& i) { return 1 + (i + 1) * d; }

Nat beta(const Nat& x1, const Nat& x2, const Nat& x3) { return x1 % beta_modulus(x2, x3); }

BetaPair encode_seq(std::span<const Nat> values) {
  if (values.empty()) throw std::invalid_argument("cannot beta-code an empty sequence");
  Nat l = values.size();
  for (const Nat& v : values) {
    if (v < 0) throw std::invalid_argument("sequence entries must be natural numbers");
    l = std::max(l, v);
  }
  if (l > kMaxFactorialArgument) {
    throw std::overflow_error("beta coding needs " + to_string(l) + "!, which is out of reach");
  }
  Nat d = factorial(l.convert_to<std::uint64_t>());

  // Incremental CRT: n solves the first i congruences modulo `product`.
  Nat n = values[0];
  Nat product = beta_modulus(d, 0);
  n %= product;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const Nat m = beta_modulus(d, i);
    Nat diff = (values[i] - n) % m;
    if (diff < 0) diff += m;
    const Nat t = (diff * mod_inverse(product, m)) % m;
    n += product * t;
    product *= m;
  }
  return {std::move(n), std::move(d)};
}

std::vector<Nat> decode_seq(const BetaPair& pair, std::size_t length) {
  std::vector<Nat> out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(beta(pair.n, pair.d, i));
  return out;
}

bool moduli_coprime_check(std::uint64_t l, std::uint64_t k) {
  const Nat d = factorial(l);
  for (std::uint64_t i = 0; i < k; ++i) {
    for (std::uint64_t j = i + 1; j < k; ++j) {
      if (boost::multiprecision::gcd(beta_modulus(d, i), beta_modulus(d, j)) != 1) return false;
    }
  }
  return true;
}

}  // namespace pa
