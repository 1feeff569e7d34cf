#include <doctest.h>

#include "pa/beta.hpp"
#include "support/oracles.hpp"

using namespace pa;

namespace {

std::vector<Nat> nats(const std::vector<std::uint64_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("beta") {
  for (std::uint64_t c = 0; c < 5; ++c) {
    for (std::uint64_t i = 0; i < 5; ++i) CHECK(beta(0, c, i) == 0);
  }
  CHECK(beta(7, 1, 0) == 1);
  CHECK(beta(100, 3, 2) == 0);
  for (std::uint64_t x1 = 0; x1 < 30; ++x1) {
    for (std::uint64_t x2 = 0; x2 < 6; ++x2) {
      for (std::uint64_t x3 = 0; x3 < 6; ++x3) CHECK(beta(x1, x2, x3) == oracle::beta(x1, x2, x3));
    }
  }
  CHECK(beta_modulus(6, 1) == 13);
}

TEST_CASE("encode_seq examples") {
  CHECK(encode_seq(nats({5})) == BetaPair{5, 120});
  CHECK(encode_seq(nats({2, 3})) == BetaPair{16, 6});
  CHECK(oracle::least_crt_solution({2, 3}, 91) == 16);
  CHECK(oracle::least_crt_solution({5}, 200) == 5);
  CHECK_THROWS_AS(encode_seq(std::vector<Nat>{}), std::invalid_argument);
  CHECK_THROWS_AS(encode_seq(nats({kMaxFactorialArgument + 1})), std::overflow_error);
}

TEST_CASE("encode_seq decodes back and is minimal") {
  oracle::Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    std::vector<std::uint64_t> f(oracle::uniform(rng, 1, 6));
    for (auto& x : f) x = oracle::uniform(rng, 0, 10);
    const BetaPair p = encode_seq(nats(f));
    std::uint64_t l = f.size();
    for (auto x : f) l = std::max(l, x);
    CHECK(p.d == factorial(l));
    CHECK(decode_seq(p, f.size()) == nats(f));
  }
  for (int t = 0; t < 60; ++t) {
    std::vector<std::uint64_t> f(oracle::uniform(rng, 1, 3));
    for (auto& x : f) x = oracle::uniform(rng, 0, 3);
    const BetaPair p = encode_seq(nats(f));
    CHECK(oracle::least_crt_solution(f, 2'000'000) == p.n.convert_to<std::uint64_t>());
  }
}

TEST_CASE("entries past the coded length are not a continuation") {
  // [1, 2] codes with d = 2 as n = 1 (mod 3), 2 (mod 5): n = 7, and
  // beta(7, 2, 2) = 7 mod 7 = 0, which is not the continuation 3.
  const BetaPair p = encode_seq(nats({1, 2}));
  CHECK(p == BetaPair{7, 2});
  CHECK(beta(p.n, p.d, 2) == 0);
  CHECK(beta(p.n, p.d, 2) != 3);
}

TEST_CASE("moduli are pairwise coprime") {
  CHECK(moduli_coprime_check(3, 2));
  CHECK(moduli_coprime_check(5, 1));
  for (std::uint64_t l = 0; l <= 8; ++l) {
    for (std::uint64_t k = 0; k <= l; ++k) {
      CHECK(moduli_coprime_check(l, k));
      const std::uint64_t d = oracle::factorial(l);
      for (std::uint64_t i = 0; i < k; ++i) {
        for (std::uint64_t j = i + 1; j < k; ++j) {
          CHECK(oracle::gcd(1 + (i + 1) * d, 1 + (j + 1) * d) == 1);
        }
      }
    }
  }
  // Past k = l: l = 1 gives moduli 2, 3, 4.
  CHECK_FALSE(moduli_coprime_check(1, 3));
}
