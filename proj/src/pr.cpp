#include "pa/pr.hpp"

#include <algorithm>
#include <cctype>

namespace pa {

struct PrFunction::Node {
  Kind kind;
  std::size_t arity = 1;
  std::size_t index = 0;
  std::vector<PrFunction> children;  // Comp: outer, inners...; PrimRec: base, step
  std::vector<PrFunction> inners;
};

PrFunction PrFunction::zero() { return PrFunction(std::make_shared<const Node>(Node{Kind::Zero, 1, 0, {}, {}})); }

PrFunction PrFunction::succ() { return PrFunction(std::make_shared<const Node>(Node{Kind::Succ, 1, 0, {}, {}})); }

PrFunction PrFunction::proj(std::size_t arity, std::size_t index) {
  return PrFunction(std::make_shared<const Node>(Node{Kind::Proj, arity, index, {}, {}}));
}

PrFunction PrFunction::comp(PrFunction outer, std::vector<PrFunction> inners) {
  const std::size_t arity = inners.empty() ? 0 : inners.front().arity();
  return PrFunction(std::make_shared<const Node>(
      Node{Kind::Comp, arity, 0, {std::move(outer)}, std::move(inners)}));
}

PrFunction PrFunction::prim_rec(PrFunction base, PrFunction step) {
  const std::size_t arity = base.arity() + 1;
  return PrFunction(std::make_shared<const Node>(
      Node{Kind::PrimRec, arity, 0, {std::move(base), std::move(step)}, {}}));
}

PrFunction::Kind PrFunction::kind() const noexcept { return node_->kind; }

std::size_t PrFunction::arity() const noexcept { return node_->arity; }

std::size_t PrFunction::proj_index() const {
  if (node_->kind != Kind::Proj) throw std::logic_error("proj_index on non-projection");
  return node_->index;
}

const PrFunction& PrFunction::outer() const {
  if (node_->kind != Kind::Comp) throw std::logic_error("outer on non-composition");
  return node_->children[0];
}

const std::vector<PrFunction>& PrFunction::inners() const {
  if (node_->kind != Kind::Comp) throw std::logic_error("inners on non-composition");
  return node_->inners;
}

const PrFunction& PrFunction::base() const {
  if (node_->kind != Kind::PrimRec) throw std::logic_error("base on non-recursion");
  return node_->children[0];
}

const PrFunction& PrFunction::step() const {
  if (node_->kind != Kind::PrimRec) throw std::logic_error("step on non-recursion");
  return node_->children[1];
}

bool operator==(const PrFunction& a, const PrFunction& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.arity == y.arity && x.index == y.index &&
         x.children == y.children && x.inners == y.inners;
}

PrSyntaxError::PrSyntaxError(std::size_t ln, std::size_t col, const std::string& message)
    : std::runtime_error("line " + std::to_string(ln) + ", column " + std::to_string(col) + ": " +
                         message),
      line(ln),
      column(col) {}

std::optional<std::string> validate(const PrFunction& f) {
  switch (f.kind()) {
    case PrFunction::Kind::Zero:
    case PrFunction::Kind::Succ:
      return std::nullopt;
    case PrFunction::Kind::Proj:
      if (f.arity() < 1 || f.proj_index() < 1 || f.proj_index() > f.arity()) {
        return "projection " + render(f) + " needs 1 <= i <= n";
      }
      return std::nullopt;
    case PrFunction::Kind::Comp: {
      const auto& inners = f.inners();
      if (inners.empty()) return "composition " + render(f) + " has no inner functions";
      if (auto e = validate(f.outer())) return e;
      if (f.outer().arity() != inners.size()) {
        return "composition " + render(f) + ": outer function has arity " +
               std::to_string(f.outer().arity()) + " but " + std::to_string(inners.size()) +
               " inner functions";
      }
      for (const PrFunction& g : inners) {
        if (auto e = validate(g)) return e;
        if (g.arity() != inners.front().arity()) {
          return "composition " + render(f) + ": inner functions disagree on arity";
        }
      }
      return std::nullopt;
    }
    case PrFunction::Kind::PrimRec: {
      if (auto e = validate(f.base())) return e;
      if (auto e = validate(f.step())) return e;
      const std::size_t n = f.base().arity();
      if (n < 1) return "recursion " + render(f) + ": base function must take an argument";
      if (f.step().arity() != n + 2) {
        return "recursion " + render(f) + ": base has arity " + std::to_string(n) +
               " so the step needs arity " + std::to_string(n + 2) + ", not " +
               std::to_string(f.step().arity());
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

void require_valid(const PrFunction& f) {
  if (auto e = validate(f)) throw ArityError(*e);
}

std::size_t rank(const PrFunction& f) {
  switch (f.kind()) {
    case PrFunction::Kind::Zero:
    case PrFunction::Kind::Succ:
    case PrFunction::Kind::Proj:
      return 0;
    case PrFunction::Kind::Comp: {
      std::size_t r = rank(f.outer());
      for (const PrFunction& g : f.inners()) r = std::max(r, rank(g));
      return r;
    }
    case PrFunction::Kind::PrimRec:
      return 1 + std::max(rank(f.base()), rank(f.step()));
  }
  return 0;
}

namespace {

struct BudgetExhausted {};

class Evaluator {
 public:
  explicit Evaluator(std::uint64_t budget) : remaining_(budget) {}

  Nat eval(const PrFunction& f, std::span<const Nat> args) {
    if (remaining_ == 0) throw BudgetExhausted{};
    --remaining_;
    switch (f.kind()) {
      case PrFunction::Kind::Zero:
        return 0;
      case PrFunction::Kind::Succ:
        return args[0] + 1;
      case PrFunction::Kind::Proj:
        return args[f.proj_index() - 1];
      case PrFunction::Kind::Comp: {
        std::vector<Nat> mid;
        mid.reserve(f.inners().size());
        for (const PrFunction& g : f.inners()) mid.push_back(eval(g, args));
        return eval(f.outer(), mid);
      }
      case PrFunction::Kind::PrimRec: {
        const std::size_t n = args.size() - 1;
        Nat acc = eval(f.base(), args.first(n));
        std::vector<Nat> step_args(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(n));
        step_args.push_back(0);
        step_args.push_back(0);
        for (Nat y = 0; y < args[n]; ++y) {
          step_args[n] = y;
          step_args[n + 1] = std::move(acc);
          acc = eval(f.step(), step_args);
        }
        return acc;
      }
    }
    return 0;
  }

 private:
  std::uint64_t remaining_;
};

}  // namespace

std::optional<Nat> eval_pr(const PrFunction& f, std::span<const Nat> args, std::uint64_t budget) {
  require_valid(f);
  if (args.size() != f.arity()) {
    throw ArityError("function of arity " + std::to_string(f.arity()) + " applied to " +
                     std::to_string(args.size()) + " arguments");
  }
  try {
    return Evaluator(budget).eval(f, args);
  } catch (const BudgetExhausted&) {
    return std::nullopt;
  }
}

std::string render(const PrFunction& f) {
  switch (f.kind()) {
    case PrFunction::Kind::Zero:
      return "Z";
    case PrFunction::Kind::Succ:
      return "S";
    case PrFunction::Kind::Proj:
      return "P[" + std::to_string(f.arity()) + "," + std::to_string(f.proj_index()) + "]";
    case PrFunction::Kind::Comp: {
      std::string out = "C[" + render(f.outer()) + ";";
      for (std::size_t i = 0; i < f.inners().size(); ++i) {
        out += i ? ", " : " ";
        out += render(f.inners()[i]);
      }
      return out + "]";
    }
    case PrFunction::Kind::PrimRec:
      return "R[" + render(f.base()) + "; " + render(f.step()) + "]";
  }
  return "?";
}

void PrLibrary::define(const std::string& name, PrFunction f) {
  if (auto it = index_.find(name); it != index_.end()) {
    entries_[it->second].second = std::move(f);
    return;
  }
  index_.emplace(name, entries_.size());
  entries_.emplace_back(name, std::move(f));
}

const PrFunction* PrLibrary::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &entries_[it->second].second;
}

const PrFunction& PrLibrary::at(std::string_view name) const {
  if (const PrFunction* f = find(name)) return *f;
  throw std::out_of_range("no function named '" + std::string(name) + "'");
}

namespace {

class PrParser {
 public:
  PrParser(std::string_view text, std::size_t line, std::size_t column_offset,
           const PrLibrary* env, const PrLibrary* prelude)
      : s_(text), line_(line), col0_(column_offset), env_(env), prelude_(prelude) {}

  PrFunction expression_eof() {
    PrFunction f = expression();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing text");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw PrSyntaxError(line_, col0_ + pos_ + 1, what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::size_t number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    if (pos_ - start > 6) fail("number too large");
    return std::stoul(std::string(s_.substr(start, pos_ - start)));
  }

  PrFunction expression() {
    skip();
    if (pos_ >= s_.size()) fail("expected an expression");
    const char c = s_[pos_];
    const bool next_is_word =
        pos_ + 1 < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])) ||
                                 s_[pos_ + 1] == '_');
    if (!next_is_word) {
      switch (c) {
        case 'Z':
          ++pos_;
          return PrFunction::zero();
        case 'S':
          ++pos_;
          return PrFunction::succ();
        case 'P': {
          ++pos_;
          expect('[');
          const std::size_t n = number();
          expect(',');
          const std::size_t i = number();
          expect(']');
          return PrFunction::proj(n, i);
        }
        case 'C': {
          ++pos_;
          expect('[');
          PrFunction outer = expression();
          expect(';');
          std::vector<PrFunction> inners;
          do {
            inners.push_back(expression());
          } while (accept(','));
          expect(']');
          return PrFunction::comp(std::move(outer), std::move(inners));
        }
        case 'R': {
          ++pos_;
          expect('[');
          PrFunction base = expression();
          expect(';');
          PrFunction step = expression();
          expect(']');
          return PrFunction::prim_rec(std::move(base), std::move(step));
        }
        default:
          break;
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = s_.substr(start, pos_ - start);
      if (env_) {
        if (const PrFunction* f = env_->find(name)) return *f;
      }
      if (prelude_) {
        if (const PrFunction* f = prelude_->find(name)) return *f;
      }
      pos_ = start;
      fail("unknown function '" + std::string(name) + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col0_;
  const PrLibrary* env_;
  const PrLibrary* prelude_;
};

bool is_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

constexpr std::string_view kStandardLibrary = R"(# Arithmetic on the naturals, built from Z, S, P, C and R.
let add = R[P[1,1]; C[S; P[3,3]]]
let mul = R[Z; C[add; P[3,3], P[3,1]]]
let pred2 = R[Z; P[3,2]]
let pred = C[pred2; P[1,1], P[1,1]]
let monus = R[P[1,1]; C[pred; P[3,3]]]
let one = C[S; Z]
let fact2 = R[one; C[mul; P[3,3], C[S; P[3,2]]]]
let factorial = C[fact2; P[1,1], P[1,1]]
)";

}  // namespace

PrLibrary parse_pr_program(std::string_view text, const PrLibrary* prelude) {
  PrLibrary lib;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const std::size_t indent = static_cast<std::size_t>(body.data() - line.data());
    if (body.substr(0, 4) != "let " && body.substr(0, 4) != "let\t") {
      throw PrSyntaxError(line_no, indent + 1, "expected 'let name = expr'");
    }
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) throw PrSyntaxError(line_no, indent + 1, "missing '='");
    const std::string_view name = trim(body.substr(4, eq - 4));
    if (!is_name(name)) throw PrSyntaxError(line_no, indent + 5, "bad function name");
    if (name.size() == 1 && std::string_view("ZSPCR").find(name[0]) != std::string_view::npos) {
      throw PrSyntaxError(line_no, indent + 5, "'" + std::string(name) + "' is reserved");
    }
    const std::string_view expr = body.substr(eq + 1);
    PrFunction f = PrParser(expr, line_no, indent + eq + 1, &lib, prelude).expression_eof();
    if (auto e = validate(f)) throw PrSyntaxError(line_no, indent + 1, *e);
    lib.define(std::string(name), std::move(f));
  }
  return lib;
}

PrFunction parse_pr_expression(std::string_view text, const PrLibrary* env) {
  return PrParser(text, 1, 0, env, nullptr).expression_eof();
}

const PrLibrary& standard_library() {
  static const PrLibrary lib = parse_pr_program(kStandardLibrary);
  return lib;
}

std::string_view standard_library_source() { return kStandardLibrary; }

}  // namespace pa
