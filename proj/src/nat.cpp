#include "pa/nat.hpp"

#include <cctype>
#include <limits>
#include <mutex>
#include <vector>

namespace pa {

Nat parse_nat(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  Nat n = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("not a natural number: '" + std::string(text) + "'");
    }
    n = n * 10 + (c - '0');
  }
  return n;
}

std::string to_string(const Nat& n) { return n.str(); }

bool fits_u64(const Nat& n) { return n >= 0 && n <= std::numeric_limits<std::uint64_t>::max(); }

std::uint64_t to_u64(const Nat& n) {
  if (!fits_u64(n)) throw std::overflow_error("value does not fit in 64 bits");
  return n.convert_to<std::uint64_t>();
}

Nat factorial(std::uint64_t n) {
  Nat r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

namespace {

std::mutex prime_mutex;
std::vector<std::uint64_t> prime_table;

void extend_primes(std::size_t count) {
  std::uint64_t limit = prime_table.empty() ? 64 : prime_table.back() * 2;
  while (prime_table.size() < count) {
    std::vector<bool> composite(limit + 1, false);
    prime_table.clear();
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      prime_table.push_back(i);
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    limit *= 2;
  }
}

}  // namespace

std::uint64_t nth_prime(std::size_t index) {
  std::lock_guard lock(prime_mutex);
  if (index >= prime_table.size()) extend_primes(index + 1);
  return prime_table[index];
}

}  // namespace pa
