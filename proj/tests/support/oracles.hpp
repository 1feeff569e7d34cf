#pragma once

// Independent reference implementations and generators used by the tests.
// Nothing here calls the evaluator or the codecs under test.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pa/syntax.hpp"

namespace oracle {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

// --- random core syntax ----------------------------------------------------

inline pa::Term random_term(Rng& rng, int depth, pa::VarIndex max_var) {
  const auto pick = uniform(rng, 0, depth <= 0 ? 1 : 4);
  switch (pick) {
    case 0: return pa::Term::zero();
    case 1: return pa::Term::var(static_cast<pa::VarIndex>(uniform(rng, 1, max_var)));
    case 2: return pa::Term::succ(random_term(rng, depth - 1, max_var));
    case 3: return pa::Term::add(random_term(rng, depth - 1, max_var), random_term(rng, depth - 1, max_var));
    default: return pa::Term::mul(random_term(rng, depth - 1, max_var), random_term(rng, depth - 1, max_var));
  }
}

inline pa::Formula random_formula(Rng& rng, int depth, pa::VarIndex max_var) {
  const auto pick = uniform(rng, 0, depth <= 0 ? 0 : 3);
  switch (pick) {
    case 0: return pa::Formula::eq(random_term(rng, 2, max_var), random_term(rng, 2, max_var));
    case 1: return pa::Formula::negate(random_formula(rng, depth - 1, max_var));
    case 2: return pa::Formula::implies(random_formula(rng, depth - 1, max_var),
                                        random_formula(rng, depth - 1, max_var));
    default: return pa::Formula::forall(static_cast<pa::VarIndex>(uniform(rng, 1, max_var)),
                                        random_formula(rng, depth - 1, max_var));
  }
}

// --- bounded formulas with their own semantics -------------------------------

// A small term language over uint64, evaluated directly.
struct BTerm {
  enum Kind { Num, Var, Succ, Add, Mul } kind = Num;
  std::uint64_t value = 0;  // Num
  unsigned var = 0;         // Var
  std::shared_ptr<BTerm> l, r;

  std::uint64_t eval(const std::map<unsigned, std::uint64_t>& env) const {
    switch (kind) {
      case Num: return value;
      case Var: return env.at(var);
      case Succ: return l->eval(env) + 1;
      case Add: return l->eval(env) + r->eval(env);
      case Mul: return l->eval(env) * r->eval(env);
    }
    return 0;
  }

  std::string text() const {
    switch (kind) {
      case Num: {
        std::string s = "0";
        for (std::uint64_t i = 0; i < value; ++i) s = "S(" + s + ")";
        return s;
      }
      case Var: return "x" + std::to_string(var);
      case Succ: return "S(" + l->text() + ")";
      case Add: return "(" + l->text() + " + " + r->text() + ")";
      case Mul: return "(" + l->text() + " * " + r->text() + ")";
    }
    return "";
  }
};

// Quantifiers are bounded by numerals; connectives include the sugar forms.
struct BFormula {
  enum Kind { Eq, Lt, Not, Imp, And, Or, All, Ex } kind = Eq;
  std::shared_ptr<BTerm> a, b;
  std::shared_ptr<BFormula> l, r;
  unsigned var = 0;
  std::uint64_t bound = 0;

  bool eval(std::map<unsigned, std::uint64_t>& env) const {
    switch (kind) {
      case Eq: return a->eval(env) == b->eval(env);
      case Lt: return a->eval(env) < b->eval(env);
      case Not: return !l->eval(env);
      case Imp: return !l->eval(env) || r->eval(env);
      case And: return l->eval(env) && r->eval(env);
      case Or: return l->eval(env) || r->eval(env);
      case All:
      case Ex: {
        const auto saved = env.find(var) == env.end() ? std::optional<std::uint64_t>{}
                                                      : std::optional<std::uint64_t>{env[var]};
        bool result = kind == All;
        for (std::uint64_t v = 0; v < bound; ++v) {
          env[var] = v;
          const bool body = l->eval(env);
          if (kind == All && !body) { result = false; break; }
          if (kind == Ex && body) { result = true; break; }
        }
        if (saved) env[var] = *saved; else env.erase(var);
        return result;
      }
    }
    return false;
  }

  std::string text() const {
    BTerm n{BTerm::Num, bound};
    const std::string x = "x" + std::to_string(var);
    switch (kind) {
      case Eq: return a->text() + " = " + b->text();
      case Lt: return a->text() + " < " + b->text();
      case Not: return "~" + l->text();
      case Imp: return "(" + l->text() + " -> " + r->text() + ")";
      case And: return "(" + l->text() + " & " + r->text() + ")";
      case Or: return "(" + l->text() + " | " + r->text() + ")";
      case All: return "(A" + x + ")(" + x + " < " + n.text() + " -> " + l->text() + ")";
      case Ex: return "(E" + x + ")(" + x + " < " + n.text() + " & " + l->text() + ")";
    }
    return "";
  }
};

inline std::shared_ptr<BTerm> random_bterm(Rng& rng, int depth, const std::vector<unsigned>& scope) {
  auto t = std::make_shared<BTerm>();
  const auto pick = uniform(rng, 0, depth <= 0 ? 1 : 4);
  if (pick == 1 && scope.empty()) {
    t->kind = BTerm::Num;
    t->value = uniform(rng, 0, 3);
    return t;
  }
  switch (pick) {
    case 0: t->kind = BTerm::Num; t->value = uniform(rng, 0, 3); break;
    case 1: t->kind = BTerm::Var; t->var = scope[uniform(rng, 0, scope.size() - 1)]; break;
    case 2: t->kind = BTerm::Succ; t->l = random_bterm(rng, depth - 1, scope); break;
    case 3: t->kind = BTerm::Add; t->l = random_bterm(rng, depth - 1, scope); t->r = random_bterm(rng, depth - 1, scope); break;
    default: t->kind = BTerm::Mul; t->l = random_bterm(rng, depth - 1, scope); t->r = random_bterm(rng, depth - 1, scope); break;
  }
  return t;
}

// Closed when `scope` is empty at the top. Quantified variables come from 1..4
// and bounds from 0..6.
inline std::shared_ptr<BFormula> random_bformula(Rng& rng, int depth, std::vector<unsigned> scope) {
  auto f = std::make_shared<BFormula>();
  const auto pick = uniform(rng, 0, depth <= 0 ? 1 : 7);
  switch (pick) {
    case 0: f->kind = BFormula::Eq; break;
    case 1: f->kind = BFormula::Lt; break;
    case 2: f->kind = BFormula::Not; break;
    case 3: f->kind = BFormula::Imp; break;
    case 4: f->kind = BFormula::And; break;
    case 5: f->kind = BFormula::Or; break;
    case 6: f->kind = BFormula::All; break;
    default: f->kind = BFormula::Ex; break;
  }
  switch (f->kind) {
    case BFormula::Eq:
    case BFormula::Lt:
      f->a = random_bterm(rng, 2, scope);
      f->b = random_bterm(rng, 2, scope);
      break;
    case BFormula::Not:
      f->l = random_bformula(rng, depth - 1, scope);
      break;
    case BFormula::All:
    case BFormula::Ex:
      f->var = static_cast<unsigned>(uniform(rng, 1, 4));
      f->bound = uniform(rng, 0, 6);
      scope.push_back(f->var);
      f->l = random_bformula(rng, depth - 1, scope);
      break;
    default:
      f->l = random_bformula(rng, depth - 1, scope);
      f->r = random_bformula(rng, depth - 1, scope);
      break;
  }
  return f;
}

// --- truncated-domain semantics ----------------------------------------------

// Truth of a core formula when every quantifier ranges over 0..domain-1.
// Agrees with truth over the naturals for formulas whose quantified facts
// are settled inside the domain.
inline std::uint64_t term_value(const pa::Term& t, const std::map<pa::VarIndex, std::uint64_t>& env) {
  switch (t.kind()) {
    case pa::Term::Kind::Zero: return 0;
    case pa::Term::Kind::Var: return env.at(t.index());
    case pa::Term::Kind::Succ: return term_value(t.inner(), env) + 1;
    case pa::Term::Kind::Add: return term_value(t.left(), env) + term_value(t.right(), env);
    case pa::Term::Kind::Mul: return term_value(t.left(), env) * term_value(t.right(), env);
  }
  return 0;
}

inline bool truncated_truth(const pa::Formula& f, std::map<pa::VarIndex, std::uint64_t>& env,
                            std::uint64_t domain) {
  switch (f.kind()) {
    case pa::Formula::Kind::Eq: return term_value(f.lhs(), env) == term_value(f.rhs(), env);
    case pa::Formula::Kind::Not: return !truncated_truth(f.inner(), env, domain);
    case pa::Formula::Kind::Implies:
      return !truncated_truth(f.antecedent(), env, domain) || truncated_truth(f.consequent(), env, domain);
    case pa::Formula::Kind::ForAll: {
      const pa::VarIndex x = f.bound_var();
      auto it = env.find(x);
      const std::optional<std::uint64_t> saved =
          it == env.end() ? std::nullopt : std::optional<std::uint64_t>(it->second);
      bool all = true;
      for (std::uint64_t v = 0; v < domain && all; ++v) {
        env[x] = v;
        all = truncated_truth(f.body(), env, domain);
      }
      if (saved) env[x] = *saved; else env.erase(x);
      return all;
    }
  }
  return false;
}

inline bool truncated_truth(const pa::Formula& f, std::uint64_t domain) {
  std::map<pa::VarIndex, std::uint64_t> env;
  return truncated_truth(f, env, domain);
}

// --- arithmetic --------------------------------------------------------------

inline std::uint64_t beta(std::uint64_t x1, std::uint64_t x2, std::uint64_t x3) {
  return x1 % (1 + (x3 + 1) * x2);
}

inline std::uint64_t factorial(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

// Least n with n = f_i mod 1 + (i + 1) l! for all i, by scanning; nothing
// when no n below `limit` works.
inline std::optional<std::uint64_t> least_crt_solution(const std::vector<std::uint64_t>& f,
                                                       std::uint64_t limit) {
  std::uint64_t l = f.size();
  for (auto v : f) l = std::max(l, v);
  const std::uint64_t d = factorial(l);
  for (std::uint64_t n = 0; n < limit; ++n) {
    bool ok = true;
    for (std::size_t i = 0; i < f.size() && ok; ++i) ok = n % (1 + (i + 1) * d) == f[i];
    if (ok) return n;
  }
  return std::nullopt;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Reference values of the standard library functions.
inline std::uint64_t reference(const std::string& name, const std::vector<std::uint64_t>& a) {
  if (name == "add") return a[0] + a[1];
  if (name == "mul") return a[0] * a[1];
  if (name == "pred") return a[0] == 0 ? 0 : a[0] - 1;
  if (name == "monus") return a[0] >= a[1] ? a[0] - a[1] : 0;
  if (name == "factorial") return factorial(a[0]);
  if (name == "one") return 1;
  throw std::invalid_argument("no reference for " + name);
}

}  // namespace oracle
