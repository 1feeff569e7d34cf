#include <doctest.h>

#include "pa/eval.hpp"
#include "support/oracles.hpp"

using namespace pa;

namespace {

Verdict exact(const char* text) { return eval_closed(parse_formula(text), EvalMode::Exact, 0); }
Verdict search(const char* text, std::uint64_t budget) {
  return eval_closed(parse_formula(text), EvalMode::Search, budget);
}

Verdict flip(Verdict v) {
  return v == Verdict::True ? Verdict::False : v == Verdict::False ? Verdict::True : Verdict::Unknown;
}

// Closes a random formula by substituting numerals for its free variables.
Formula closed_random(oracle::Rng& rng, int depth) {
  Formula f = oracle::random_formula(rng, depth, 3);
  for (VarIndex x : free_vars(f)) f = substitute(f, x, numeral(oracle::uniform(rng, 0, 3)));
  return f;
}

}  // namespace

TEST_CASE("term values") {
  CHECK(eval_term(numeral(7), Assignment{}) == 7);
  CHECK(eval_term(parse_term("(x1 + S(0))"), Assignment{{1, Nat(4)}}) == 5);
  CHECK(eval_term(parse_term("(x1 * x2)"), Assignment{{1, Nat(3)}, {2, Nat(4)}}) == 12);
  CHECK_THROWS_AS(eval_term(parse_term("x9"), Assignment{}), EvalError);
}

TEST_CASE("atomic and bounded formulas") {
  CHECK(satisfies(parse_formula("0 = 0"), Assignment{}, 10) == Verdict::True);
  CHECK(satisfies(parse_formula("S(0) = 0"), Assignment{}, 10) == Verdict::False);
  CHECK(exact("(Ax1)(x1 < S(S(S(0))) -> ~x1 = S(S(S(S(0)))))") == Verdict::True);
  CHECK(exact("(Ax1)(x1 < S(S(S(0))) -> ~x1 = S(S(0)))") == Verdict::False);
  CHECK(exact("(Ex1)(x1 < S(S(S(S(S(0))))) & (x1 + x1) = S(0))") == Verdict::False);
  CHECK(exact("(Ex1)(x1 < S(S(S(S(S(0))))) & (x1 + x1) = S(S(0)))") == Verdict::True);
  CHECK(exact("(Ex1)(x1 < 0 & x1 = x1)") == Verdict::False);
  CHECK(exact("(Ax1)(x1 < 0 -> ~x1 = x1)") == Verdict::True);
  CHECK(exact("S(S(0)) < (S(0) * S(S(S(0))))") == Verdict::True);
  // Nested bounds may mention outer variables.
  CHECK(exact("(Ax1)(x1 < S(S(S(S(0)))) -> (Ex2)(x2 < S(x1) & x2 = x1))") == Verdict::True);
  CHECK(is_bounded(parse_formula("(Ax1)(x1 < S(0) -> x1 < S(0))")));
  CHECK_FALSE(is_bounded(parse_formula("(Ax1)x1 = x1")));
  CHECK_FALSE(is_bounded(parse_formula("(Ax1)(x1 < x1 -> 0 = 0)")));  // bound mentions x1
}

TEST_CASE("unbounded quantifiers under search") {
  for (std::uint64_t b : {10u, 1000u, 100000u}) CHECK(search("(Ax1)~S(x1) = 0", b) == Verdict::Unknown);
  CHECK(search("(Ex1)x1 = S(0)", 2) == Verdict::True);
  CHECK(search("(Ex1)x1 = S(0)", 1) == Verdict::Unknown);
  CHECK(search("(Ax1)x1 = S(0)", 5) == Verdict::False);
  for (std::uint64_t b : {1u, 10u, 1000u, 50000u}) CHECK(search("(Ex1)(x1 + x1) = S(0)", b) == Verdict::Unknown);
  CHECK(search("(Ex1)(Ex2)((x1 * x2) = S(S(S(S(S(S(0)))))) & ~x1 = S(0) & ~x2 = S(0))", 2000) ==
        Verdict::True);
  CHECK(search("~(Ex1)x1 = S(S(0))", 10) == Verdict::False);
  CHECK_THROWS_AS(exact("(Ax1)~S(x1) = 0"), UnboundedQuantifierError);
  CHECK_THROWS_AS(exact("(Ex1)x1 = 0"), UnboundedQuantifierError);
  CHECK_THROWS_AS(eval_closed(parse_formula("x1 = 0"), EvalMode::Exact, 0), EvalError);
  CHECK_THROWS_AS(satisfies(parse_formula("x1 = 0"), Assignment{}, 10), EvalError);
}

TEST_CASE("strong Kleene implication") {
  CHECK(search("((Ax1)~S(x1) = 0 -> 0 = 0)", 10) == Verdict::True);
  CHECK(search("(0 = S(0) -> (Ax1)~S(x1) = 0)", 10) == Verdict::True);
  CHECK(search("((Ax1)~S(x1) = 0 -> 0 = S(0))", 10) == Verdict::Unknown);
  CHECK(search("(0 = 0 -> (Ax1)~S(x1) = 0)", 10) == Verdict::Unknown);
}

TEST_CASE("bounded corpus agrees with brute force") {
  oracle::Rng rng(41);
  for (int i = 0; i < 300; ++i) {
    const auto g = oracle::random_bformula(rng, 4, {});
    const std::string text = g->text();
    std::map<unsigned, std::uint64_t> env;
    const Verdict expected = g->eval(env) ? Verdict::True : Verdict::False;
    const Formula f = parse_formula(text);
    REQUIRE_MESSAGE(is_bounded(f), text);
    CHECK_MESSAGE(eval_closed(f, EvalMode::Exact, 0) == expected, text);
    CHECK_MESSAGE(eval_closed(f, EvalMode::Search, 1) == expected, text);
  }
}

TEST_CASE("duality and monotone search") {
  oracle::Rng rng(43);
  for (int i = 0; i < 300; ++i) {
    const Formula f = closed_random(rng, 4);
    Verdict previous = Verdict::Unknown;
    for (std::uint64_t b : {1u, 4u, 16u, 64u}) {
      const Verdict v = eval_closed(f, EvalMode::Search, b);
      CHECK(eval_closed(Formula::negate(f), EvalMode::Search, b) == flip(v));
      if (previous != Verdict::Unknown) CHECK(v == previous);
      previous = v;
    }
  }
}

TEST_CASE("search verdicts are sound on a truncated model") {
  // Quantifier-free matrices under one quantifier: a True or False verdict
  // comes from a witness or a counterexample, which the truncated model sees
  // once it is large enough.
  oracle::Rng rng(47);
  for (int i = 0; i < 200; ++i) {
    const Formula body = oracle::random_formula(rng, 0, 1);
    for (const Formula& f : {Formula::forall(1, body), exists(1, body)}) {
      const Verdict v = eval_closed(f, EvalMode::Search, 50);
      if (v == Verdict::True) CHECK(oracle::truncated_truth(f, 50));
      if (v == Verdict::False) CHECK_FALSE(oracle::truncated_truth(f, 50));
    }
  }
}

TEST_CASE("witness checking") {
  const Formula f = parse_formula("(Ex1)(Ex2)(x1 = S(x2) & x2 = S(S(0)))");
  CHECK(check_witnesses(f, Assignment{}, std::vector<Nat>{3, 2}));
  CHECK_FALSE(check_witnesses(f, Assignment{}, std::vector<Nat>{3, 1}));
  CHECK_THROWS_AS(check_witnesses(f, Assignment{}, std::vector<Nat>{3}), CertificateError);
  CHECK_THROWS_AS(check_witnesses(f, Assignment{}, std::vector<Nat>{3, 2, 1}), CertificateError);
  CHECK_THROWS_AS(check_witnesses(parse_formula("(Ax1)x1 = x1"), Assignment{}, std::vector<Nat>{}),
                  EvalError);
  // Existentials under a bounded universal take one value per instance.
  const Formula g = parse_formula("(Ax1)(x1 < S(S(0)) -> (Ex2)x2 = S(x1))");
  CHECK(check_witnesses(g, Assignment{}, std::vector<Nat>{1, 2}));
  CHECK_FALSE(check_witnesses(g, Assignment{}, std::vector<Nat>{1, 1}));

  const auto found = search_witnesses(f, Assignment{}, 100);
  REQUIRE(found.has_value());
  CHECK(found->values == std::vector<Nat>{3, 2});
  CHECK_FALSE(search_witnesses(parse_formula("(Ex1)(x1 + x1) = S(0)"), Assignment{}, 100).has_value());
}

TEST_CASE("assignments") {
  Assignment a{{3, Nat(7)}};
  CHECK(a.contains(3));
  CHECK_FALSE(a.contains(2));
  CHECK(a.get(3) == 7);
  a.set(3, std::uint64_t{9});
  CHECK(*a.find(3) == 9);
  a.erase(3);
  CHECK(a.find(3) == nullptr);
  CHECK_THROWS_AS(a.get(3), EvalError);
  // Quantifiers restore the outer binding of a shadowed variable.
  CHECK(satisfies(parse_formula("((Ex1)x1 = S(S(0)) & x1 = 0)"), Assignment{{1, Nat(0)}}, 10) ==
        Verdict::True);
  CHECK(to_string(Verdict::Unknown) == "unknown");
}
