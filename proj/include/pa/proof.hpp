#pragma once

// Hilbert-style proofs in first-order Peano Arithmetic.
//
// Axioms are the arithmetic schemata PA1-PA8 (instances under any choice of
// terms for x1, x2, x3), the induction schema PA9, and the logical schemata
//
//   K1  A -> (B -> A)
//   K2  (A -> (B -> C)) -> ((A -> B) -> (A -> C))
//   K3  (~B -> ~A) -> ((~B -> A) -> B)
//   K4  (Ax)A -> A[t/x]           t free for x in A
//   K5  (Ax)(A -> B) -> (A -> (Ax)B)   x not free in A
//
// with modus ponens and generalisation as the rules.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pa/godel.hpp"
#include "pa/syntax.hpp"

namespace pa {

struct Justification {
  enum class Kind : std::uint8_t { Axiom, ModusPonens, Generalisation, Unjustified };

  Kind kind = Kind::Unjustified;
  std::string axiom;        // Axiom: expected schema name, empty for any
  std::size_t first = 0;    // ModusPonens, Generalisation: 1-based line
  std::size_t second = 0;   // ModusPonens
  VarIndex var = 0;         // Generalisation

  static Justification axiom_of(std::string name = {});
  static Justification modus_ponens(std::size_t i, std::size_t j);
  static Justification generalisation(std::size_t i, VarIndex var);
  static Justification unjustified() { return {}; }

  friend bool operator==(const Justification&, const Justification&) = default;
};

struct ProofLine {
  Formula formula;
  Justification justification;
};

struct ProofSequence {
  std::vector<ProofLine> lines;
};

struct ProofParseError : std::runtime_error {
  ProofParseError(std::size_t line, const std::string& message);
  std::size_t line;
};

// One step per line: `formula ;; justification`, where the justification is
// `axiom [name]`, `mp i j`, `gen i xk` or empty. Blank lines and lines
// starting with `#` are skipped. Throws ProofParseError.
ProofSequence parse_proof(std::string_view text);

// The file form of a proof; parse_proof(format_proof(p)) reproduces p.
std::string format_proof(const ProofSequence& p);

// Schema names in the order they are tried.
const std::vector<std::string>& axiom_names();

// The first schema f is an instance of.
std::optional<std::string> is_axiom(const Formula& f);

// Throws std::invalid_argument for an unknown name.
bool matches_axiom(const Formula& f, std::string_view name);

struct CheckResult {
  bool ok = false;
  std::optional<Formula> conclusion;
  std::size_t failed_line = 0;  // 1-based, when !ok
  std::string reason;
  // How each accepted line was justified, e.g. "PA5", "mp 1 2", "gen 1 x1".
  std::vector<std::string> steps;
};

CheckResult check_proof(const ProofSequence& p);

// F(0) -> ((Ax)(F -> F(S(x))) -> (Ax)F)
Formula induction_instance(const Formula& f, VarIndex var);

// The sequence code of the Gödel numbers of the lines.
GodelNumber encode_proof(const ProofSequence& p);

// x codes a sequence of formulas that is a proof of the formula coded by y.
bool proves_rel(const GodelNumber& x, const GodelNumber& y);

}  // namespace pa
