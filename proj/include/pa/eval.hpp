#pragma once

// Tarski satisfaction over the natural numbers.
//
// Three regimes share one evaluator:
//   exact        bounded quantifiers are decided by a finite scan; any other
//                quantifier is rejected up front
//   search       unbounded quantifiers enumerate 0, 1, ..., r - 1 for
//                r = 1, 2, 4, ... up to the budget, and the answer may be
//                Unknown
//   certificate  unbounded existentials take supplied witness values and
//                nothing is ever searched
//
// Recognised bounded shapes, with x not free in t:
//   a < b                   ~(Aw)~((a + S(w)) = b)   decided as a < b
//   (Ax)(x < t -> F)        scanned for x < value(t)
//   (Ex)(x < t & F)         ~(Ax)~~((x < t) -> ~F)   scanned likewise
//
// A search verdict of True or False is always correct; Unknown means the
// budget ran out first. The budget caps both the witness magnitude and the
// total number of quantifier instances tried.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pa/arithmetize.hpp"
#include "pa/nat.hpp"
#include "pa/syntax.hpp"

namespace pa {

enum class Verdict : std::uint8_t { True, False, Unknown };

std::string to_string(Verdict v);

enum class EvalMode : std::uint8_t { Exact, Search };

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnboundedQuantifierError : EvalError {
  using EvalError::EvalError;
};

struct CertificateError : EvalError {
  using EvalError::EvalError;
};

class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<std::pair<VarIndex, Nat>> values);

  void set(VarIndex var, Nat value);
  void set(VarIndex var, std::uint64_t value);
  void erase(VarIndex var);
  bool contains(VarIndex var) const noexcept;
  // Throws EvalError when the variable is unbound.
  const Nat& get(VarIndex var) const;
  const Nat* find(VarIndex var) const noexcept;

 private:
  std::vector<Nat> values_;
  std::vector<char> bound_;
};

// Supplies the value of each unbounded existential in certificate mode.
class WitnessSource {
 public:
  virtual ~WitnessSource() = default;
  virtual Nat witness(VarIndex var, const Assignment& current) = 0;
};

Nat eval_term(const Term& t, const Assignment& a);

// Whether every quantifier of f is one of the recognised bounded shapes.
bool is_bounded(const Formula& f);

// Search-regime satisfaction of f under a, which must bind free_vars(f).
Verdict satisfies(const Formula& f, const Assignment& a, std::uint64_t budget);

// Truth of a closed formula. Exact mode throws UnboundedQuantifierError for
// formulas that are not bounded and never answers Unknown.
Verdict eval_closed(const Formula& f, EvalMode mode, std::uint64_t budget);

// Certificate-regime evaluation. Throws EvalError on an unbounded universal
// quantifier, and when bounded scans exceed kMaxCertificateIterations in total.
bool evaluate_with_witnesses(const Formula& f, const Assignment& a, WitnessSource& source);

inline constexpr std::uint64_t kMaxCertificateIterations = 20'000'000;

// Checks f under a with its unbounded existentials fixed, in evaluation order,
// to `witnesses`. Throws CertificateError unless exactly all are consumed.
bool check_witnesses(const Formula& f, const Assignment& a, std::span<const Nat> witnesses);

// The compiled-formula form of check_witnesses: a binds cf's inputs and
// output, and every existential met must be one of cf's slots.
bool check_certificate(const CompiledFormula& cf, const Assignment& a, const Certificate& cert);

// Search-regime evaluation that records the witnesses found for unbounded
// existentials. On True, returns them in certificate order. Intended for
// formulas whose existentials sit in conjunctive positions, such as compiled
// formulas.
std::optional<Certificate> search_witnesses(const Formula& f, const Assignment& a,
                                            std::uint64_t budget);

}  // namespace pa
