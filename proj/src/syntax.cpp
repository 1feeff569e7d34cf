#include "pa/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace pa {

struct Term::Node {
  Kind kind;
  VarIndex index = 0;
  std::shared_ptr<const Node> a, b;
};

struct Formula::Node {
  Kind kind;
  VarIndex var = 0;
  Term lhs, rhs;
  std::shared_ptr<const Node> a, b;
};

Term::Term() : node_(std::make_shared<const Node>(Node{Kind::Zero, 0, nullptr, nullptr})) {}

Term Term::var(VarIndex index) {
  if (index == 0) throw std::invalid_argument("variable indices start at 1");
  return Term(std::make_shared<const Node>(Node{Kind::Var, index, nullptr, nullptr}));
}

Term Term::succ(Term inner) {
  return Term(std::make_shared<const Node>(Node{Kind::Succ, 0, std::move(inner.node_), nullptr}));
}

Term Term::add(Term left, Term right) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Add, 0, std::move(left.node_), std::move(right.node_)}));
}

Term Term::mul(Term left, Term right) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Mul, 0, std::move(left.node_), std::move(right.node_)}));
}

Term::Kind Term::kind() const noexcept { return node_->kind; }

VarIndex Term::index() const {
  if (node_->kind != Kind::Var) throw std::logic_error("Term::index on non-variable");
  return node_->index;
}

Term Term::inner() const {
  if (node_->kind != Kind::Succ) throw std::logic_error("Term::inner on non-successor");
  return Term(node_->a);
}

Term Term::left() const {
  if (node_->kind != Kind::Add && node_->kind != Kind::Mul) {
    throw std::logic_error("Term::left on non-binary term");
  }
  return Term(node_->a);
}

Term Term::right() const {
  if (node_->kind != Kind::Add && node_->kind != Kind::Mul) {
    throw std::logic_error("Term::right on non-binary term");
  }
  return Term(node_->b);
}

bool operator==(const Term& x, const Term& y) {
  const Term::Node* a = x.node_.get();
  const Term::Node* b = y.node_.get();
  // Successor chains can be long; walk them iteratively.
  while (a != b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case Term::Kind::Zero:
        return true;
      case Term::Kind::Var:
        return a->index == b->index;
      case Term::Kind::Succ:
        a = a->a.get();
        b = b->a.get();
        continue;
      case Term::Kind::Add:
      case Term::Kind::Mul:
        if (!(Term(a->a) == Term(b->a))) return false;
        a = a->b.get();
        b = b->b.get();
        continue;
    }
  }
  return true;
}

Formula Formula::eq(Term left, Term right) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Eq, 0, std::move(left), std::move(right), nullptr, nullptr}));
}

Formula Formula::negate(Formula inner) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Not, 0, {}, {}, std::move(inner.node_), nullptr}));
}

Formula Formula::implies(Formula antecedent, Formula consequent) {
  return Formula(std::make_shared<const Node>(Node{
      Kind::Implies, 0, {}, {}, std::move(antecedent.node_), std::move(consequent.node_)}));
}

Formula Formula::forall(VarIndex var, Formula body) {
  if (var == 0) throw std::invalid_argument("variable indices start at 1");
  return Formula(
      std::make_shared<const Node>(Node{Kind::ForAll, var, {}, {}, std::move(body.node_), nullptr}));
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }

Term Formula::lhs() const {
  if (node_->kind != Kind::Eq) throw std::logic_error("Formula::lhs on non-equation");
  return node_->lhs;
}

Term Formula::rhs() const {
  if (node_->kind != Kind::Eq) throw std::logic_error("Formula::rhs on non-equation");
  return node_->rhs;
}

Formula Formula::inner() const {
  if (node_->kind != Kind::Not) throw std::logic_error("Formula::inner on non-negation");
  return Formula(node_->a);
}

Formula Formula::antecedent() const {
  if (node_->kind != Kind::Implies) throw std::logic_error("Formula::antecedent on non-implication");
  return Formula(node_->a);
}

Formula Formula::consequent() const {
  if (node_->kind != Kind::Implies) throw std::logic_error("Formula::consequent on non-implication");
  return Formula(node_->b);
}

VarIndex Formula::bound_var() const {
  if (node_->kind != Kind::ForAll) throw std::logic_error("Formula::bound_var on non-quantifier");
  return node_->var;
}

Formula Formula::body() const {
  if (node_->kind != Kind::ForAll) throw std::logic_error("Formula::body on non-quantifier");
  return Formula(node_->a);
}

bool operator==(const Formula& x, const Formula& y) {
  const Formula::Node* a = x.node_.get();
  const Formula::Node* b = y.node_.get();
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::Eq:
      return a->lhs == b->lhs && a->rhs == b->rhs;
    case Formula::Kind::Not:
      return Formula(a->a) == Formula(b->a);
    case Formula::Kind::Implies:
      return Formula(a->a) == Formula(b->a) && Formula(a->b) == Formula(b->b);
    case Formula::Kind::ForAll:
      return a->var == b->var && Formula(a->a) == Formula(b->a);
  }
  return false;
}

SyntaxError::SyntaxError(std::size_t pos, const std::string& message)
    : std::runtime_error("syntax error at " + std::to_string(pos) + ": " + message), position(pos) {}

Term numeral(std::uint64_t n) {
  Term t = Term::zero();
  for (std::uint64_t i = 0; i < n; ++i) t = Term::succ(std::move(t));
  return t;
}

std::optional<std::uint64_t> numeral_value(const Term& t) {
  std::uint64_t n = 0;
  Term cur = t;
  while (cur.kind() == Term::Kind::Succ) {
    ++n;
    cur = cur.inner();
  }
  if (cur.kind() != Term::Kind::Zero) return std::nullopt;
  return n;
}

namespace {

void collect_vars(const Term& t, std::set<VarIndex>& out) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      return;
    case Term::Kind::Var:
      out.insert(t.index());
      return;
    case Term::Kind::Succ:
      collect_vars(t.inner(), out);
      return;
    case Term::Kind::Add:
    case Term::Kind::Mul:
      collect_vars(t.left(), out);
      collect_vars(t.right(), out);
      return;
  }
}

void collect_free(const Formula& f, std::set<VarIndex>& bound, std::set<VarIndex>& out) {
  switch (f.kind()) {
    case Formula::Kind::Eq: {
      std::set<VarIndex> vs;
      collect_vars(f.lhs(), vs);
      collect_vars(f.rhs(), vs);
      for (VarIndex v : vs) {
        if (!bound.contains(v)) out.insert(v);
      }
      return;
    }
    case Formula::Kind::Not:
      collect_free(f.inner(), bound, out);
      return;
    case Formula::Kind::Implies:
      collect_free(f.antecedent(), bound, out);
      collect_free(f.consequent(), bound, out);
      return;
    case Formula::Kind::ForAll: {
      const bool inserted = bound.insert(f.bound_var()).second;
      collect_free(f.body(), bound, out);
      if (inserted) bound.erase(f.bound_var());
      return;
    }
  }
}

}  // namespace

std::set<VarIndex> vars(const Term& t) {
  std::set<VarIndex> out;
  collect_vars(t, out);
  return out;
}

std::set<VarIndex> free_vars(const Formula& f) {
  std::set<VarIndex> bound, out;
  collect_free(f, bound, out);
  return out;
}

bool occurs_free(const Formula& f, VarIndex var) { return free_vars(f).contains(var); }

VarIndex max_var(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      return 0;
    case Term::Kind::Var:
      return t.index();
    case Term::Kind::Succ: {
      Term cur = t;
      while (cur.kind() == Term::Kind::Succ) cur = cur.inner();
      return max_var(cur);
    }
    case Term::Kind::Add:
    case Term::Kind::Mul:
      return std::max(max_var(t.left()), max_var(t.right()));
  }
  return 0;
}

VarIndex max_var(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
      return std::max(max_var(f.lhs()), max_var(f.rhs()));
    case Formula::Kind::Not:
      return max_var(f.inner());
    case Formula::Kind::Implies:
      return std::max(max_var(f.antecedent()), max_var(f.consequent()));
    case Formula::Kind::ForAll:
      return std::max(f.bound_var(), max_var(f.body()));
  }
  return 0;
}

Term substitute(const Term& t, VarIndex var, const Term& replacement) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      return t;
    case Term::Kind::Var:
      return t.index() == var ? replacement : t;
    case Term::Kind::Succ:
      return Term::succ(substitute(t.inner(), var, replacement));
    case Term::Kind::Add:
      return Term::add(substitute(t.left(), var, replacement),
                       substitute(t.right(), var, replacement));
    case Term::Kind::Mul:
      return Term::mul(substitute(t.left(), var, replacement),
                       substitute(t.right(), var, replacement));
  }
  return t;
}

namespace {

Formula substitute_in(const Formula& f, VarIndex var, const Term& replacement,
                      const std::set<VarIndex>& replacement_vars) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
      return Formula::eq(substitute(f.lhs(), var, replacement),
                         substitute(f.rhs(), var, replacement));
    case Formula::Kind::Not:
      return Formula::negate(substitute_in(f.inner(), var, replacement, replacement_vars));
    case Formula::Kind::Implies:
      return Formula::implies(substitute_in(f.antecedent(), var, replacement, replacement_vars),
                              substitute_in(f.consequent(), var, replacement, replacement_vars));
    case Formula::Kind::ForAll: {
      if (f.bound_var() == var || !occurs_free(f.body(), var)) return f;
      if (replacement_vars.contains(f.bound_var())) {
        throw CaptureError("substituting " + render(replacement) + " for x" + std::to_string(var) +
                           " would be captured by (Ax" + std::to_string(f.bound_var()) + ")");
      }
      return Formula::forall(f.bound_var(),
                             substitute_in(f.body(), var, replacement, replacement_vars));
    }
  }
  return f;
}

}  // namespace

Formula substitute(const Formula& f, VarIndex var, const Term& replacement) {
  return substitute_in(f, var, replacement, vars(replacement));
}

Formula conj(Formula a, Formula b) {
  return Formula::negate(Formula::implies(std::move(a), Formula::negate(std::move(b))));
}

Formula disj(Formula a, Formula b) {
  return Formula::implies(Formula::negate(std::move(a)), std::move(b));
}

Formula exists(VarIndex var, Formula body) {
  return Formula::negate(Formula::forall(var, Formula::negate(std::move(body))));
}

Formula less(Term a, Term b, FreshVars& fresh) {
  const VarIndex w = fresh.take();
  return exists(w, Formula::eq(Term::add(std::move(a), Term::succ(Term::var(w))), std::move(b)));
}

Formula unique_exists(VarIndex var, Formula body, FreshVars& fresh) {
  const VarIndex y = fresh.take();
  const VarIndex z = fresh.take();
  Formula at_y = substitute(body, var, Term::var(y));
  Formula at_z = substitute(body, var, Term::var(z));
  Formula uniqueness = Formula::forall(
      y, Formula::forall(z, Formula::implies(conj(std::move(at_y), std::move(at_z)),
                                             Formula::eq(Term::var(y), Term::var(z)))));
  return conj(exists(var, std::move(body)), std::move(uniqueness));
}

Formula expand_unique_exists(VarIndex var, Formula body) {
  FreshVars fresh(std::max(var, max_var(body)) + 1);
  return unique_exists(var, std::move(body), fresh);
}

namespace {

void render_to(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      out += '0';
      return;
    case Term::Kind::Var:
      out += 'x';
      out += std::to_string(t.index());
      return;
    case Term::Kind::Succ: {
      std::size_t depth = 0;
      Term cur = t;
      while (cur.kind() == Term::Kind::Succ) {
        out += "S(";
        ++depth;
        cur = cur.inner();
      }
      render_to(cur, out);
      out.append(depth, ')');
      return;
    }
    case Term::Kind::Add:
    case Term::Kind::Mul:
      out += '(';
      render_to(t.left(), out);
      out += t.kind() == Term::Kind::Add ? " + " : " * ";
      render_to(t.right(), out);
      out += ')';
      return;
  }
}

void render_to(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
      render_to(f.lhs(), out);
      out += " = ";
      render_to(f.rhs(), out);
      return;
    case Formula::Kind::Not:
      out += '~';
      render_to(f.inner(), out);
      return;
    case Formula::Kind::Implies:
      out += '(';
      render_to(f.antecedent(), out);
      out += " -> ";
      render_to(f.consequent(), out);
      out += ')';
      return;
    case Formula::Kind::ForAll:
      out += "(Ax";
      out += std::to_string(f.bound_var());
      out += ')';
      render_to(f.body(), out);
      return;
  }
}

// ---------------------------------------------------------------------------
// Parsing

enum class Tok {
  LParen, RParen, Tilde, Arrow, Amp, Bar, Equals, Less, Plus, Star,
  Zero, Succ, Var, All, Ex, ExUnique, End
};

struct Token {
  Tok kind;
  std::size_t pos;
  VarIndex index = 0;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    switch (c) {
      case '(': out.push_back({Tok::LParen, start}); ++i; continue;
      case ')': out.push_back({Tok::RParen, start}); ++i; continue;
      case '~': out.push_back({Tok::Tilde, start}); ++i; continue;
      case '&': out.push_back({Tok::Amp, start}); ++i; continue;
      case '|': out.push_back({Tok::Bar, start}); ++i; continue;
      case '=': out.push_back({Tok::Equals, start}); ++i; continue;
      case '<': out.push_back({Tok::Less, start}); ++i; continue;
      case '+': out.push_back({Tok::Plus, start}); ++i; continue;
      case '*': out.push_back({Tok::Star, start}); ++i; continue;
      case '0': out.push_back({Tok::Zero, start}); ++i; continue;
      case 'S': out.push_back({Tok::Succ, start}); ++i; continue;
      case 'A': out.push_back({Tok::All, start}); ++i; continue;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::Arrow, start});
          i += 2;
          continue;
        }
        throw SyntaxError(start, "expected '->'");
      case 'E':
        if (i + 1 < s.size() && s[i + 1] == '1') {
          out.push_back({Tok::ExUnique, start});
          i += 2;
        } else {
          out.push_back({Tok::Ex, start});
          ++i;
        }
        continue;
      case 'x': {
        ++i;
        const std::size_t digits = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == digits) throw SyntaxError(start, "variable needs an index, as in x1");
        const std::string_view num = s.substr(digits, i - digits);
        if (num.size() > 9) throw SyntaxError(start, "variable index too large");
        const auto index = static_cast<VarIndex>(std::stoul(std::string(num)));
        if (index == 0) throw SyntaxError(start, "variable indices start at 1");
        out.push_back({Tok::Var, start, index});
        continue;
      }
      default:
        throw SyntaxError(start, std::string("unknown symbol '") + c + "'");
    }
  }
  out.push_back({Tok::End, s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)), fresh_(1) {
    VarIndex max = 0;
    for (const Token& t : toks_) max = std::max(max, t.index);
    fresh_ = FreshVars(max + 1);
  }

  Formula formula_eof() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return f;
  }

  Term term_eof() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) throw SyntaxError(peek().pos, std::string("expected ") + what);
    return toks_[pos_++];
  }

  Term term() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Zero:
        ++pos_;
        return Term::zero();
      case Tok::Var:
        ++pos_;
        return Term::var(t.index);
      case Tok::Succ: {
        ++pos_;
        expect(Tok::LParen, "'(' after S");
        Term inner = term();
        expect(Tok::RParen, "')'");
        return Term::succ(std::move(inner));
      }
      case Tok::LParen: {
        ++pos_;
        Term left = term();
        const Tok op = peek().kind;
        if (op != Tok::Plus && op != Tok::Star) throw SyntaxError(peek().pos, "expected '+' or '*'");
        ++pos_;
        Term right = term();
        expect(Tok::RParen, "')'");
        return op == Tok::Plus ? Term::add(std::move(left), std::move(right))
                               : Term::mul(std::move(left), std::move(right));
      }
      default:
        throw SyntaxError(t.pos, "expected a term");
    }
  }

  Formula atom() {
    Term left = term();
    const Token& op = peek();
    if (op.kind == Tok::Equals) {
      ++pos_;
      return Formula::eq(std::move(left), term());
    }
    if (op.kind == Tok::Less) {
      ++pos_;
      return less(std::move(left), term(), fresh_);
    }
    throw SyntaxError(op.pos, "expected '=' or '<'");
  }

  bool at_quantifier() const {
    const Tok q = peek(1).kind;
    return peek().kind == Tok::LParen && (q == Tok::All || q == Tok::Ex || q == Tok::ExUnique) &&
           peek(2).kind == Tok::Var && peek(3).kind == Tok::RParen;
  }

  Formula formula() {
    const Token& t = peek();
    if (t.kind == Tok::Tilde) {
      ++pos_;
      return Formula::negate(formula());
    }
    if (t.kind != Tok::LParen) return atom();
    if (at_quantifier()) {
      const Tok q = peek(1).kind;
      const VarIndex v = peek(2).index;
      pos_ += 4;
      Formula body = formula();
      switch (q) {
        case Tok::All: return Formula::forall(v, std::move(body));
        case Tok::Ex: return exists(v, std::move(body));
        default: return unique_exists(v, std::move(body), fresh_);
      }
    }
    // A parenthesis opens either a compound term on the left of an atom or a
    // bracketed formula; try the term reading first.
    const std::size_t saved = pos_;
    const VarIndex saved_fresh = fresh_.peek();
    try {
      return atom();
    } catch (const SyntaxError&) {
      pos_ = saved;
      fresh_ = FreshVars(saved_fresh);
    }
    ++pos_;
    Formula first = formula();
    if (accept(Tok::RParen)) return first;
    if (accept(Tok::Arrow)) {
      Formula second = formula();
      expect(Tok::RParen, "')'");
      return Formula::implies(std::move(first), std::move(second));
    }
    if (peek().kind == Tok::Amp || peek().kind == Tok::Bar) {
      const Tok op = peek().kind;
      Formula acc = std::move(first);
      while (accept(op)) {
        Formula next = formula();
        acc = op == Tok::Amp ? conj(std::move(acc), std::move(next))
                             : disj(std::move(acc), std::move(next));
      }
      expect(Tok::RParen, "')'");
      return acc;
    }
    throw SyntaxError(peek().pos, "expected '->', '&', '|' or ')'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  FreshVars fresh_;
};

std::size_t count_symbols(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Zero:
    case Term::Kind::Var:
      return 1;
    case Term::Kind::Succ: {
      std::size_t n = 0;
      Term cur = t;
      while (cur.kind() == Term::Kind::Succ) {
        ++n;
        cur = cur.inner();
      }
      return n + count_symbols(cur);
    }
    case Term::Kind::Add:
    case Term::Kind::Mul:
      return 1 + count_symbols(t.left()) + count_symbols(t.right());
  }
  return 0;
}

}  // namespace

std::string render(const Term& t) {
  std::string out;
  render_to(t, out);
  return out;
}

std::string render(const Formula& f) {
  std::string out;
  render_to(f, out);
  return out;
}

Term parse_term(std::string_view text) { return Parser(text).term_eof(); }

Formula parse_formula(std::string_view text) { return Parser(text).formula_eof(); }

std::size_t symbol_count(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
      return 1 + count_symbols(f.lhs()) + count_symbols(f.rhs());
    case Formula::Kind::Not:
      return 1 + symbol_count(f.inner());
    case Formula::Kind::Implies:
      return 1 + symbol_count(f.antecedent()) + symbol_count(f.consequent());
    case Formula::Kind::ForAll:
      return 2 + symbol_count(f.body());
  }
  return 0;
}

}  // namespace pa
