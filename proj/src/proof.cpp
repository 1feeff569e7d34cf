#include "pa/proof.hpp"

#include <array>
#include <cctype>
#include <sstream>

namespace pa {

Justification Justification::axiom_of(std::string name) {
  Justification j;
  j.kind = Kind::Axiom;
  j.axiom = std::move(name);
  return j;
}

Justification Justification::modus_ponens(std::size_t i, std::size_t k) {
  Justification j;
  j.kind = Kind::ModusPonens;
  j.first = i;
  j.second = k;
  return j;
}

Justification Justification::generalisation(std::size_t i, VarIndex var) {
  Justification j;
  j.kind = Kind::Generalisation;
  j.first = i;
  j.var = var;
  return j;
}

ProofParseError::ProofParseError(std::size_t line_no, const std::string& message)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + message), line(line_no) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::size_t line_number(const std::string& word, std::size_t at) {
  if (word.empty() || word.size() > 9 ||
      word.find_first_not_of("0123456789") != std::string::npos || std::stoul(word) == 0) {
    throw ProofParseError(at, "expected a line number, got '" + word + "'");
  }
  return std::stoul(word);
}

VarIndex variable(const std::string& word, std::size_t at) {
  if (word.size() < 2 || word.size() > 10 || word[0] != 'x' ||
      word.find_first_not_of("0123456789", 1) != std::string::npos || word == "x0" ||
      word[1] == '0') {
    throw ProofParseError(at, "expected a variable such as x1, got '" + word + "'");
  }
  return static_cast<VarIndex>(std::stoul(word.substr(1)));
}

Justification parse_justification(std::string_view text, std::size_t at) {
  const auto w = words(text);
  if (w.empty()) return Justification::unjustified();
  if (w[0] == "axiom") {
    if (w.size() > 2) throw ProofParseError(at, "axiom takes at most one schema name");
    if (w.size() == 2) {
      bool known = false;
      for (const auto& n : axiom_names()) known = known || n == w[1];
      if (!known) throw ProofParseError(at, "unknown axiom schema '" + w[1] + "'");
      return Justification::axiom_of(w[1]);
    }
    return Justification::axiom_of();
  }
  if (w[0] == "mp") {
    if (w.size() != 3) throw ProofParseError(at, "mp takes two line numbers");
    return Justification::modus_ponens(line_number(w[1], at), line_number(w[2], at));
  }
  if (w[0] == "gen") {
    if (w.size() != 3) throw ProofParseError(at, "gen takes a line number and a variable");
    return Justification::generalisation(line_number(w[1], at), variable(w[2], at));
  }
  throw ProofParseError(at, "unknown justification '" + w[0] + "'");
}

// --- schema matching -------------------------------------------------------

// Metavariables x1..x3 of the arithmetic axioms stand for arbitrary terms.
using Bindings = std::array<std::optional<Term>, 4>;

bool match_term(const Term& pattern, const Term& t, Bindings& b) {
  if (pattern.kind() == Term::Kind::Var) {
    auto& slot = b[pattern.index()];
    if (!slot) {
      slot = t;
      return true;
    }
    return *slot == t;
  }
  if (pattern.kind() != t.kind()) return false;
  switch (pattern.kind()) {
    case Term::Kind::Zero:
      return true;
    case Term::Kind::Succ:
      return match_term(pattern.inner(), t.inner(), b);
    case Term::Kind::Add:
    case Term::Kind::Mul:
      return match_term(pattern.left(), t.left(), b) && match_term(pattern.right(), t.right(), b);
    case Term::Kind::Var:
      break;
  }
  return false;
}

bool match_formula(const Formula& pattern, const Formula& f, Bindings& b) {
  if (pattern.kind() != f.kind()) return false;
  switch (pattern.kind()) {
    case Formula::Kind::Eq:
      return match_term(pattern.lhs(), f.lhs(), b) && match_term(pattern.rhs(), f.rhs(), b);
    case Formula::Kind::Not:
      return match_formula(pattern.inner(), f.inner(), b);
    case Formula::Kind::Implies:
      return match_formula(pattern.antecedent(), f.antecedent(), b) &&
             match_formula(pattern.consequent(), f.consequent(), b);
    case Formula::Kind::ForAll:
      break;
  }
  return false;
}

const std::vector<Formula>& arithmetic_patterns() {
  static const std::vector<Formula> patterns = [] {
    std::vector<Formula> p;
    for (const char* text : {
             "(x1 = x2 -> (x1 = x3 -> x2 = x3))",
             "(x1 = x2 -> S(x1) = S(x2))",
             "~0 = S(x1)",
             "(S(x1) = S(x2) -> x1 = x2)",
             "(x1 + 0) = x1",
             "(x1 + S(x2)) = S((x1 + x2))",
             "(x1 * 0) = 0",
             "(x1 * S(x2)) = ((x1 * x2) + x1)",
         }) {
      p.push_back(parse_formula(text));
    }
    return p;
  }();
  return patterns;
}

bool is_implies(const Formula& f) { return f.kind() == Formula::Kind::Implies; }
bool is_not(const Formula& f) { return f.kind() == Formula::Kind::Not; }

bool induction_axiom(const Formula& f) {
  if (!is_implies(f) || !is_implies(f.consequent())) return false;
  const Formula& a = f.antecedent();
  const Formula b = f.consequent().antecedent();
  const Formula c = f.consequent().consequent();
  if (c.kind() != Formula::Kind::ForAll) return false;
  const VarIndex x = c.bound_var();
  const Formula body = c.body();
  try {
    if (!(a == substitute(body, x, Term::zero()))) return false;
    const Formula step =
        Formula::implies(body, substitute(body, x, Term::succ(Term::var(x))));
    return b == Formula::forall(x, step);
  } catch (const CaptureError&) {
    return false;
  }
}

bool k1(const Formula& f) {
  return is_implies(f) && is_implies(f.consequent()) && f.consequent().consequent() == f.antecedent();
}

bool k2(const Formula& f) {
  if (!is_implies(f) || !is_implies(f.antecedent()) || !is_implies(f.consequent())) return false;
  const Formula l = f.antecedent();       // A -> (B -> C)
  const Formula r = f.consequent();       // (A -> B) -> (A -> C)
  if (!is_implies(l.consequent()) || !is_implies(r.antecedent()) || !is_implies(r.consequent())) {
    return false;
  }
  const Formula a = l.antecedent();
  const Formula b = l.consequent().antecedent();
  const Formula c = l.consequent().consequent();
  return r.antecedent() == Formula::implies(a, b) && r.consequent() == Formula::implies(a, c);
}

bool k3(const Formula& f) {
  if (!is_implies(f) || !is_implies(f.antecedent()) || !is_implies(f.consequent())) return false;
  const Formula l = f.antecedent();  // ~B -> ~A
  if (!is_not(l.antecedent()) || !is_not(l.consequent())) return false;
  const Formula nb = l.antecedent();
  const Formula a = l.consequent().inner();
  return f.consequent() == Formula::implies(Formula::implies(nb, a), nb.inner());
}

// Walks A and A' in parallel, collecting the term that replaces free x.
class InstanceMatcher {
 public:
  explicit InstanceMatcher(VarIndex x) : x_(x) {}

  bool term(const Term& a, const Term& b) {
    if (a.kind() == Term::Kind::Var && a.index() == x_ && bound_ == 0) {
      if (!t_) {
        t_ = b;
        return true;
      }
      return *t_ == b;
    }
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Term::Kind::Zero:
        return true;
      case Term::Kind::Var:
        return a.index() == b.index();
      case Term::Kind::Succ:
        return term(a.inner(), b.inner());
      case Term::Kind::Add:
      case Term::Kind::Mul:
        return term(a.left(), b.left()) && term(a.right(), b.right());
    }
    return false;
  }

  bool formula(const Formula& a, const Formula& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Formula::Kind::Eq:
        return term(a.lhs(), b.lhs()) && term(a.rhs(), b.rhs());
      case Formula::Kind::Not:
        return formula(a.inner(), b.inner());
      case Formula::Kind::Implies:
        return formula(a.antecedent(), b.antecedent()) && formula(a.consequent(), b.consequent());
      case Formula::Kind::ForAll: {
        if (a.bound_var() != b.bound_var()) return false;
        const bool shadows = a.bound_var() == x_;
        bound_ += shadows;
        const bool ok = formula(a.body(), b.body());
        bound_ -= shadows;
        return ok;
      }
    }
    return false;
  }

  const std::optional<Term>& replacement() const { return t_; }

 private:
  VarIndex x_;
  int bound_ = 0;
  std::optional<Term> t_;
};

bool k4(const Formula& f) {
  if (!is_implies(f) || f.antecedent().kind() != Formula::Kind::ForAll) return false;
  const VarIndex x = f.antecedent().bound_var();
  const Formula a = f.antecedent().body();
  InstanceMatcher m(x);
  if (!m.formula(a, f.consequent())) return false;
  if (!m.replacement()) return true;  // x not free in A: A[t/x] = A
  try {
    return substitute(a, x, *m.replacement()) == f.consequent();
  } catch (const CaptureError&) {
    return false;
  }
}

bool k5(const Formula& f) {
  if (!is_implies(f) || f.antecedent().kind() != Formula::Kind::ForAll) return false;
  const VarIndex x = f.antecedent().bound_var();
  const Formula inner = f.antecedent().body();
  if (!is_implies(inner)) return false;
  const Formula a = inner.antecedent();
  if (occurs_free(a, x)) return false;
  return f.consequent() == Formula::implies(a, Formula::forall(x, inner.consequent()));
}

bool matches_index(const Formula& f, std::size_t k) {
  if (k < 8) {
    Bindings b;
    return match_formula(arithmetic_patterns()[k], f, b);
  }
  switch (k) {
    case 8: return induction_axiom(f);
    case 9: return k1(f);
    case 10: return k2(f);
    case 11: return k3(f);
    case 12: return k4(f);
    case 13: return k5(f);
  }
  return false;
}

std::string var_name(VarIndex v) { return "x" + std::to_string(v); }

}  // namespace

ProofSequence parse_proof(std::string_view text) {
  ProofSequence p;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t sep = line.find(";;");
    const std::string_view formula_text = trim(line.substr(0, sep));
    const std::string_view just_text =
        sep == std::string_view::npos ? std::string_view{} : line.substr(sep + 2);
    if (formula_text.empty()) throw ProofParseError(line_no, "missing formula");
    Formula f = Formula::eq(Term(), Term());
    try {
      f = parse_formula(formula_text);
    } catch (const SyntaxError& e) {
      throw ProofParseError(line_no, e.what());
    }
    p.lines.push_back({f, parse_justification(just_text, line_no)});
  }
  if (p.lines.empty()) throw ProofParseError(line_no, "proof has no lines");
  return p;
}

std::string format_proof(const ProofSequence& p) {
  std::ostringstream os;
  for (const auto& line : p.lines) {
    os << render(line.formula);
    const Justification& j = line.justification;
    switch (j.kind) {
      case Justification::Kind::Axiom:
        os << " ;; axiom" << (j.axiom.empty() ? "" : " " + j.axiom);
        break;
      case Justification::Kind::ModusPonens:
        os << " ;; mp " << j.first << ' ' << j.second;
        break;
      case Justification::Kind::Generalisation:
        os << " ;; gen " << j.first << ' ' << var_name(j.var);
        break;
      case Justification::Kind::Unjustified:
        break;
    }
    os << '\n';
  }
  return os.str();
}

const std::vector<std::string>& axiom_names() {
  static const std::vector<std::string> names = {"PA1", "PA2", "PA3", "PA4", "PA5", "PA6", "PA7",
                                                 "PA8", "PA9", "K1",  "K2",  "K3",  "K4",  "K5"};
  return names;
}

std::optional<std::string> is_axiom(const Formula& f) {
  const auto& names = axiom_names();
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (matches_index(f, k)) return names[k];
  }
  return std::nullopt;
}

bool matches_axiom(const Formula& f, std::string_view name) {
  const auto& names = axiom_names();
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == name) return matches_index(f, k);
  }
  throw std::invalid_argument("unknown axiom schema '" + std::string(name) + "'");
}

CheckResult check_proof(const ProofSequence& p) {
  CheckResult result;
  if (p.lines.empty()) {
    result.reason = "empty proof";
    return result;
  }
  const auto& lines = p.lines;
  auto fail = [&](std::size_t at, std::string why) {
    result.failed_line = at + 1;
    result.reason = std::move(why);
    result.steps.clear();
    return result;
  };
  auto mp_ok = [&](std::size_t i, std::size_t j, const Formula& f) {
    const Formula& a = lines[i].formula;
    const Formula& b = lines[j].formula;
    return (is_implies(b) && b.antecedent() == a && b.consequent() == f) ||
           (is_implies(a) && a.antecedent() == b && a.consequent() == f);
  };

  for (std::size_t n = 0; n < lines.size(); ++n) {
    const Formula& f = lines[n].formula;
    const Justification& j = lines[n].justification;
    switch (j.kind) {
      case Justification::Kind::Axiom: {
        if (!j.axiom.empty()) {
          if (!matches_axiom(f, j.axiom)) return fail(n, "not an instance of " + j.axiom);
          result.steps.push_back(j.axiom);
        } else if (auto name = is_axiom(f)) {
          result.steps.push_back(*name);
        } else {
          return fail(n, "not an axiom");
        }
        break;
      }
      case Justification::Kind::ModusPonens: {
        if (j.first == 0 || j.second == 0 || j.first > n || j.second > n) {
          return fail(n, "mp must cite earlier lines");
        }
        if (!mp_ok(j.first - 1, j.second - 1, f)) {
          return fail(n, "does not follow by mp from lines " + std::to_string(j.first) + " and " +
                             std::to_string(j.second));
        }
        result.steps.push_back("mp " + std::to_string(j.first) + " " + std::to_string(j.second));
        break;
      }
      case Justification::Kind::Generalisation: {
        if (j.first == 0 || j.first > n) return fail(n, "gen must cite an earlier line");
        if (!(f == Formula::forall(j.var, lines[j.first - 1].formula))) {
          return fail(n, "is not the generalisation of line " + std::to_string(j.first) +
                             " on " + var_name(j.var));
        }
        result.steps.push_back("gen " + std::to_string(j.first) + " " + var_name(j.var));
        break;
      }
      case Justification::Kind::Unjustified: {
        if (auto name = is_axiom(f)) {
          result.steps.push_back(*name);
          break;
        }
        std::optional<std::string> found;
        for (std::size_t k = 0; k < n && !found; ++k) {
          const Formula& imp = lines[k].formula;
          if (!is_implies(imp) || !(imp.consequent() == f)) continue;
          for (std::size_t i = 0; i < n; ++i) {
            if (lines[i].formula == imp.antecedent()) {
              found = "mp " + std::to_string(i + 1) + " " + std::to_string(k + 1);
              break;
            }
          }
        }
        if (!found && f.kind() == Formula::Kind::ForAll) {
          for (std::size_t i = 0; i < n; ++i) {
            if (lines[i].formula == f.body()) {
              found = "gen " + std::to_string(i + 1) + " " + var_name(f.bound_var());
              break;
            }
          }
        }
        if (!found) return fail(n, "is neither an axiom nor a consequence of earlier lines");
        result.steps.push_back(*found);
        break;
      }
    }
  }
  result.ok = true;
  result.conclusion = lines.back().formula;
  return result;
}

Formula induction_instance(const Formula& f, VarIndex var) {
  const Formula base = substitute(f, var, Term::zero());
  const Formula step =
      Formula::forall(var, Formula::implies(f, substitute(f, var, Term::succ(Term::var(var)))));
  return Formula::implies(base, Formula::implies(step, Formula::forall(var, f)));
}

GodelNumber encode_proof(const ProofSequence& p) {
  std::vector<GodelNumber> codes;
  codes.reserve(p.lines.size());
  for (const auto& line : p.lines) codes.push_back(encode_formula(line.formula));
  return encode_sequence(codes);
}

bool proves_rel(const GodelNumber& x, const GodelNumber& y) {
  ProofSequence p;
  try {
    for (const auto& item : decode_sequence(x)) {
      p.lines.push_back({decode_formula(item), Justification::unjustified()});
    }
  } catch (const CodecError&) {
    return false;
  }
  const CheckResult r = check_proof(p);
  return r.ok && encode_formula(*r.conclusion) == y;
}

}  // namespace pa
