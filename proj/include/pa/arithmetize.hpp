#pragma once

// Compilation of primitive recursive functions into PA formulas that
// represent them, and generation of witness certificates for instances.
//
// compile(f) yields F(x1, ..., xn, x_{n+1}) with x_{n+1} the output:
//
//   Z       x2 = 0
//   S       x2 = S(x1)
//   P[n,i]  x_{n+1} = x_i
//   C[h; g1..gk]
//           (Ey1)...(Eyk)(G1(x.., y1) & ... & Gk(x.., yk) & H(y1, ..., yk, out))
//   R[g; h] (Eu)(Ev)( (Ew)(Bt(u, v, 0, w) & G(x.., w))
//                   & Bt(u, v, y, out)
//                   & (Aw)(w < y -> (Ea)(Eb)(Bt(u, v, w, a) & Bt(u, v, (w + S(0)), b)
//                                            & H(x.., w, a, b))) )
//
// An input that does not occur free in the result is added as a conjunct
// x_k = x_k, so the free variables are always x1, ..., x_{n+1}.
//
// where Bt(u, v, i, w) is (Eq)(u = ((S(0) + ((i + S(0)) * v)) * q + w) & w < S(0) + ((i + S(0)) * v)),
// which holds exactly when w = beta(u, v, i).
//
// Every existential quantifier introduced here is a certificate slot. A
// certificate lists one value per slot occurrence in evaluation order:
// outer quantifiers before inner ones, left conjuncts before right ones, and
// the slots under a bounded (Aw)(w < t -> ...) repeated for w = 0, 1, ..., t-1.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pa/beta.hpp"
#include "pa/nat.hpp"
#include "pa/pr.hpp"
#include "pa/syntax.hpp"

namespace pa {

struct Slot {
  enum class Role : std::uint8_t {
    SequenceCode,       // u: first half of the beta pair of the value sequence
    SequenceFactorial,  // v: second half of that pair
    SequenceEntry,      // beta(u, v, index)
    BetaQuotient,       // u div (1 + (index + 1) v), the witness inside Bt
    InnerValue,         // value of an inner function of a composition
  };

  VarIndex var = 0;
  Role role = Role::InnerValue;
  std::string description;

  // SequenceCode, SequenceFactorial, InnerValue: the function to evaluate and
  // the variables holding its arguments.
  std::optional<PrFunction> function;
  std::vector<VarIndex> args;

  // SequenceEntry, BetaQuotient: the coding pair and the index term.
  VarIndex code_var = 0;
  VarIndex factorial_var = 0;
  Term index;
};

struct CompiledFormula {
  Formula formula = Formula::eq(Term(), Term());
  std::vector<VarIndex> inputs;
  VarIndex output = 0;
  // In allocation order; at most one entry per variable.
  std::vector<Slot> slots;

  const Slot* find_slot(VarIndex var) const;
};

struct Certificate {
  std::vector<Nat> values;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bt(u, v, i, w) over four distinct variables, with its inner quantifiers on
// fresh indices above the four. Throws std::invalid_argument on duplicates.
Formula bt_formula(VarIndex u, VarIndex v, VarIndex i, VarIndex w);

// Validates f (ArityError) and compiles it. Deterministic.
CompiledFormula compile(const PrFunction& f);

inline constexpr std::uint64_t kDefaultCertificateBudget = 50'000'000;

// Witnesses for the instance (args, f(args)) of compile(f). Throws BudgetError
// when evaluating f or its parts exceeds `budget` nodes.
Certificate make_certificate(const CompiledFormula& cf, const PrFunction& f,
                             std::span<const Nat> args,
                             std::uint64_t budget = kDefaultCertificateBudget);

// One line per slot: "slot <k>: x<var> <description>".
std::string slot_manifest(const CompiledFormula& cf);

// F(k1, ..., kn, out) with numerals for the free variables.
Formula instance_formula(const CompiledFormula& cf, std::span<const Nat> args, const Nat& output);

}  // namespace pa
