#include <doctest.h>

#include "pa/pr.hpp"
#include "support/oracles.hpp"

using namespace pa;

namespace {

constexpr std::uint64_t kBudget = 100'000'000;

Nat run(const PrFunction& f, std::vector<Nat> args) {
  auto r = eval_pr(f, args, kBudget);
  REQUIRE(r.has_value());
  return *r;
}

const PrFunction& lib(const char* name) { return standard_library().at(name); }

}  // namespace

TEST_CASE("evaluation of the standard functions") {
  const PrFunction add =
      PrFunction::prim_rec(PrFunction::proj(1, 1), PrFunction::comp(PrFunction::succ(), {PrFunction::proj(3, 3)}));
  CHECK(add == lib("add"));
  CHECK(run(add, {2, 3}) == 5);
  for (std::uint64_t k = 0; k <= 10; ++k) CHECK(run(add, {k, 0}) == k);
  CHECK(run(lib("mul"), {3, 4}) == 12);
  for (const char* name : {"add", "mul", "monus"}) {
    for (std::uint64_t a = 0; a <= 8; ++a) {
      for (std::uint64_t b = 0; b <= 8; ++b) CHECK(run(lib(name), {a, b}) == oracle::reference(name, {a, b}));
    }
  }
  for (std::uint64_t a = 0; a <= 8; ++a) {
    CHECK(run(lib("pred"), {a}) == oracle::reference("pred", {a}));
    CHECK(run(lib("factorial"), {a}) == oracle::reference("factorial", {a}));
    CHECK(run(lib("one"), {a}) == 1);
  }
}

TEST_CASE("base functions and projections") {
  CHECK(run(PrFunction::zero(), {7}) == 0);
  CHECK(run(PrFunction::succ(), {7}) == 8);
  oracle::Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = oracle::uniform(rng, 1, 5);
    const std::size_t i = oracle::uniform(rng, 1, n);
    std::vector<Nat> args;
    for (std::size_t k = 0; k < n; ++k) args.push_back(oracle::uniform(rng, 0, 100));
    CHECK(run(PrFunction::proj(n, i), args) == args[i - 1]);
  }
}

TEST_CASE("the recursion equations hold literally") {
  for (const char* name : {"add", "mul", "monus", "pred2", "fact2"}) {
    const PrFunction& f = lib(name);
    REQUIRE(f.kind() == PrFunction::Kind::PrimRec);
    for (std::uint64_t x = 0; x <= 6; ++x) {
      CHECK(run(f, {x, 0}) == run(f.base(), {x}));
      for (std::uint64_t y = 0; y < 6; ++y) {
        CHECK(run(f, {x, y + 1}) == run(f.step(), {x, y, run(f, {x, y})}));
      }
    }
  }
  const PrFunction& c = lib("factorial");
  for (std::uint64_t x = 0; x <= 6; ++x) {
    CHECK(run(c, {x}) == run(c.outer(), {run(c.inners()[0], {x}), run(c.inners()[1], {x})}));
  }
}

TEST_CASE("budget") {
  const PrFunction& mul = lib("mul");
  CHECK_FALSE(eval_pr(mul, std::vector<Nat>{5, 5}, 10).has_value());
  std::optional<std::uint64_t> first;
  for (std::uint64_t b = 1; b < 2000; ++b) {
    auto r = eval_pr(mul, std::vector<Nat>{3, 4}, b);
    if (r && !first) first = b;
    if (first) {
      REQUIRE(r.has_value());
      CHECK(*r == 12);
    }
  }
  CHECK(first.has_value());
  CHECK_FALSE(eval_pr(mul, std::vector<Nat>{3, 4}, *first - 1).has_value());
}

TEST_CASE("rank") {
  CHECK(rank(PrFunction::zero()) == 0);
  CHECK(rank(PrFunction::proj(3, 2)) == 0);
  CHECK(rank(lib("add")) == 1);
  CHECK(rank(lib("mul")) == 2);
  CHECK(rank(lib("factorial")) == 3);
}

TEST_CASE("validation") {
  CHECK_FALSE(validate(lib("add")).has_value());
  for (const auto& [name, f] : standard_library().entries()) CHECK_MESSAGE(!validate(f), name);
  const PrFunction bad =
      PrFunction::comp(PrFunction::succ(), {PrFunction::proj(2, 1), PrFunction::proj(2, 2)});
  CHECK(validate(bad).has_value());
  CHECK_THROWS_AS(require_valid(bad), ArityError);
  CHECK(validate(PrFunction::proj(2, 3)).has_value());
  CHECK(validate(PrFunction::proj(2, 0)).has_value());
  CHECK(validate(PrFunction::prim_rec(PrFunction::zero(), PrFunction::proj(2, 1))).has_value());
  CHECK(validate(PrFunction::comp(PrFunction::succ(), {})).has_value());
  CHECK(validate(PrFunction::comp(lib("add"), {PrFunction::proj(2, 1), PrFunction::proj(3, 1)})).has_value());
  CHECK_THROWS_AS(eval_pr(bad, std::vector<Nat>{1, 2}, kBudget), ArityError);
  CHECK_THROWS_AS(eval_pr(lib("add"), std::vector<Nat>{1}, kBudget), ArityError);
}

TEST_CASE("definition language") {
  const PrLibrary defs = parse_pr_program(R"(
# doubling and squaring
let double = C[add; P[1,1], P[1,1]]
let square = C[mul; P[1,1], P[1,1]]

let const2 = C[S; C[S; Z]]
)",
                                         &standard_library());
  CHECK(run(defs.at("double"), {21}) == 42);
  CHECK(run(defs.at("square"), {9}) == 81);
  CHECK(run(defs.at("const2"), {5}) == 2);
  CHECK(defs.entries().size() == 3);

  CHECK(parse_pr_expression("R[P[1,1]; C[S; P[3,3]]]") == lib("add"));
  CHECK(render(lib("add")) == "R[P[1,1]; C[S; P[3,3]]]");
  CHECK(parse_pr_expression(render(lib("mul")), &standard_library()) == lib("mul"));

  CHECK_THROWS_AS(parse_pr_expression("R[P[1,1]; C[S; P[3,3]]"), PrSyntaxError);
  CHECK_THROWS_AS(parse_pr_expression("nosuch"), PrSyntaxError);
  CHECK_THROWS_AS(parse_pr_program("let S = Z"), PrSyntaxError);
  CHECK_THROWS_WITH_AS(parse_pr_program("let f = C[S; P[2,1], P[2,2]]"),
                       doctest::Contains("arity"), PrSyntaxError);
  try {
    parse_pr_program("let a = Z\nlet b = Q");
    FAIL("expected a syntax error");
  } catch (const PrSyntaxError& e) {
    CHECK(e.line == 2);
  }
}
