#pragma once

// Primitive recursive function expressions and their direct evaluation.
//
//   Z            zero, unary: Z(x) = 0
//   S            successor, unary
//   P[n,i]       projection onto the i-th of n arguments
//   C[f; g1..gk] composition f(g1(x..), ..., gk(x..))
//   R[g; h]      primitive recursion on the last argument:
//                  f(x.., 0)     = g(x..)
//                  f(x.., y + 1) = h(x.., y, f(x.., y))

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pa/nat.hpp"

namespace pa {

struct ArityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PrSyntaxError : std::runtime_error {
  PrSyntaxError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line;
  std::size_t column;
};

class PrFunction {
 public:
  enum class Kind : std::uint8_t { Zero, Succ, Proj, Comp, PrimRec };

  static PrFunction zero();
  static PrFunction succ();
  static PrFunction proj(std::size_t arity, std::size_t index);
  // Construction does not check arities; see validate().
  static PrFunction comp(PrFunction outer, std::vector<PrFunction> inners);
  static PrFunction prim_rec(PrFunction base, PrFunction step);

  Kind kind() const noexcept;
  std::size_t arity() const noexcept;
  std::size_t proj_index() const;                 // Proj
  const PrFunction& outer() const;                // Comp
  const std::vector<PrFunction>& inners() const;  // Comp
  const PrFunction& base() const;                 // PrimRec
  const PrFunction& step() const;                 // PrimRec

  // Stable identity of the shared node, for memoisation.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const PrFunction& a, const PrFunction& b);

 private:
  struct Node;
  explicit PrFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Checks every node: projections in range, compositions with k >= 1 inner
// functions of one common arity feeding a k-ary outer function, recursions
// with a base of arity n >= 1 and a step of arity n + 2. Returns a description
// of the first offending node, or nothing when the tree is well formed.
std::optional<std::string> validate(const PrFunction& f);

// Throws ArityError when validate() reports a problem.
void require_valid(const PrFunction& f);

// Maximum nesting depth of recursion nodes.
std::size_t rank(const PrFunction& f);

// Evaluates f directly from its defining equations. Every node visited costs
// one unit of `budget`; nothing is returned when the budget runs out.
// Throws ArityError for an ill-formed f or a wrong number of arguments.
std::optional<Nat> eval_pr(const PrFunction& f, std::span<const Nat> args, std::uint64_t budget);

std::string render(const PrFunction& f);

// Named definitions, in definition order.
class PrLibrary {
 public:
  void define(const std::string& name, PrFunction f);
  const PrFunction* find(std::string_view name) const;
  const PrFunction& at(std::string_view name) const;  // throws std::out_of_range
  const std::vector<std::pair<std::string, PrFunction>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, PrFunction>> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Parses a program of `let name = expr` lines (blank lines and `#` comments
// allowed). Names may refer to earlier definitions and to `prelude`.
// Each definition is validated as it is read.
PrLibrary parse_pr_program(std::string_view text, const PrLibrary* prelude = nullptr);

// Parses a single expression, resolving names against `env`.
PrFunction parse_pr_expression(std::string_view text, const PrLibrary* env = nullptr);

// add, mul, pred, monus, factorial and their helpers.
const PrLibrary& standard_library();
std::string_view standard_library_source();

}  // namespace pa
