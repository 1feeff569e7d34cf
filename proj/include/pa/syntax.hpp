#pragma once

// Abstract syntax of first-order Peano Arithmetic.
//
// The core language has the term formers 0, S, +, * and variables x1, x2, ...,
// and the formula formers =, ~, ->, and (Ax). Every other connective is surface
// syntax: the parser expands it into the core immediately and the printer
// never reintroduces it.
//
// Values are immutable and share structure, so copies are cheap.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pa/nat.hpp"

namespace pa {

using VarIndex = std::uint32_t;

class Term {
 public:
  enum class Kind : std::uint8_t { Zero, Var, Succ, Add, Mul };

  // The constant 0.
  Term();

  static Term zero() { return Term(); }
  static Term var(VarIndex index);
  static Term succ(Term inner);
  static Term add(Term left, Term right);
  static Term mul(Term left, Term right);

  Kind kind() const noexcept;
  VarIndex index() const;  // Var only
  Term inner() const;      // Succ only
  Term left() const;       // Add, Mul
  Term right() const;      // Add, Mul

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class Formula {
 public:
  enum class Kind : std::uint8_t { Eq, Not, Implies, ForAll };

  static Formula eq(Term left, Term right);
  static Formula negate(Formula inner);
  static Formula implies(Formula antecedent, Formula consequent);
  static Formula forall(VarIndex var, Formula body);

  Kind kind() const noexcept;
  Term lhs() const;              // Eq
  Term rhs() const;              // Eq
  Formula inner() const;         // Not
  Formula antecedent() const;    // Implies
  Formula consequent() const;    // Implies
  VarIndex bound_var() const;    // ForAll
  Formula body() const;          // ForAll

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct SyntaxError : std::runtime_error {
  SyntaxError(std::size_t position, const std::string& message);
  std::size_t position;
};

// Raised when a substitution would bind a variable of the inserted term.
struct CaptureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Allocates variable indices above everything already in use.
class FreshVars {
 public:
  explicit FreshVars(VarIndex next) : next_(next) {}
  VarIndex take() { return next_++; }
  VarIndex peek() const { return next_; }

 private:
  VarIndex next_;
};

Term numeral(std::uint64_t n);

// The value of a closed term built from 0 and S only.
std::optional<std::uint64_t> numeral_value(const Term& t);

std::set<VarIndex> vars(const Term& t);
std::set<VarIndex> free_vars(const Formula& f);
bool occurs_free(const Formula& f, VarIndex var);

// Largest index occurring anywhere (free or bound); 0 when there are none.
VarIndex max_var(const Term& t);
VarIndex max_var(const Formula& f);

Term substitute(const Term& t, VarIndex var, const Term& replacement);
// Replaces the free occurrences of `var`. Throws CaptureError instead of
// renaming when a quantifier of `f` would capture a variable of `replacement`.
Formula substitute(const Formula& f, VarIndex var, const Term& replacement);

// Surface connectives, expressed in the core language.
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula exists(VarIndex var, Formula body);
// a < b  as  ~(Aw)~((a + S(w)) = b)  with w fresh.
Formula less(Term a, Term b, FreshVars& fresh);
// (E1x)F  as  ~(Ax)~F & (Ay)(Az)((F(y) & F(z)) -> y = z)  with y, z fresh.
Formula unique_exists(VarIndex var, Formula body, FreshVars& fresh);
Formula expand_unique_exists(VarIndex var, Formula body);

std::string render(const Term& t);
std::string render(const Formula& f);

Term parse_term(std::string_view text);
Formula parse_formula(std::string_view text);

std::size_t symbol_count(const Formula& f);

}  // namespace pa
