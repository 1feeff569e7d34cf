#include "pa/godel.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace pa {

namespace {

constexpr std::uint32_t kZero = 1;
constexpr std::uint32_t kSucc = 2;
constexpr std::uint32_t kNot = 3;
constexpr std::uint32_t kImplies = 4;
constexpr std::uint32_t kForAll = 5;
constexpr std::uint32_t kEq = 6;
constexpr std::uint32_t kAdd = 7;
constexpr std::uint32_t kMul = 8;
constexpr std::uint32_t kVarBase = 8;

std::size_t bit_length(const Nat& n) { return n == 0 ? 0 : msb(n) + 1; }

// Exponents of v over 2, 3, 5, ...; empty unless v is exactly such a product.
std::vector<Nat> factor_consecutive(Nat v) {
  std::vector<Nat> out;
  if (v <= 1) return out;
  for (std::size_t i = 0;; ++i) {
    const Nat p = nth_prime(i);
    Nat e = 0, q, r;
    for (;;) {
      divide_qr(v, p, q, r);
      if (r != 0) break;
      v = std::move(q);
      ++e;
    }
    if (e == 0) break;
    out.push_back(std::move(e));
    if (v == 1) return out;
  }
  return {};
}

}  // namespace

GodelNumber GodelNumber::from_value(Nat value) {
  if (value <= 0) throw CodecError("Gödel numbers are positive");
  GodelNumber g;
  if (bit_length(value) > kMaterializeBits) {
    std::vector<Nat> exps = factor_consecutive(value);
    if (!exps.empty()) {
      g.materialized_ = false;
      g.value_ = 0;
      for (Nat& e : exps) g.exponents_.push_back(from_value(std::move(e)));
      return g;
    }
  }
  g.value_ = std::move(value);
  return g;
}

GodelNumber GodelNumber::from_exponents(std::vector<GodelNumber> exponents) {
  bool small = true;
  double estimate = 0;
  for (std::size_t i = 0; i < exponents.size() && small; ++i) {
    // Exponents are GodelNumbers, hence at least 1.
    const auto e = exponents[i].small_value();
    if (!e) {
      small = false;
      break;
    }
    estimate += static_cast<double>(*e) * std::log2(static_cast<double>(nth_prime(i)));
    if (estimate > static_cast<double>(kMaterializeBits) + 64) small = false;
  }
  if (small) {
    Nat product = 1;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      product *= boost::multiprecision::pow(Nat(nth_prime(i)),
                                            static_cast<unsigned>(*exponents[i].small_value()));
    }
    if (bit_length(product) <= kMaterializeBits) {
      GodelNumber g;
      g.value_ = std::move(product);
      return g;
    }
  }
  GodelNumber g;
  g.materialized_ = false;
  g.value_ = 0;
  g.exponents_ = std::move(exponents);
  return g;
}

GodelNumber GodelNumber::from_exponents(const std::vector<std::uint32_t>& exponents) {
  std::vector<GodelNumber> exps;
  exps.reserve(exponents.size());
  for (std::uint32_t e : exponents) exps.push_back(from_value(e));
  return from_exponents(std::move(exps));
}

const Nat& GodelNumber::value() const {
  if (!materialized_) throw std::logic_error("Gödel number is held in factored form");
  return value_;
}

std::vector<GodelNumber> GodelNumber::prime_exponents() const {
  if (!materialized_) return exponents_;
  std::vector<GodelNumber> out;
  for (Nat& e : factor_consecutive(value_)) out.push_back(from_value(std::move(e)));
  return out;
}

std::optional<std::uint64_t> GodelNumber::small_value() const {
  if (!materialized_ || !fits_u64(value_)) return std::nullopt;
  return value_.convert_to<std::uint64_t>();
}

std::string GodelNumber::to_string() const {
  if (materialized_) return pa::to_string(value_);
  std::string out;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (i) out += '*';
    out += std::to_string(nth_prime(i));
    out += '^';
    if (exponents_[i].materialized()) {
      out += exponents_[i].to_string();
    } else {
      out += '(' + exponents_[i].to_string() + ')';
    }
  }
  return out;
}

namespace {

class CodeParser {
 public:
  explicit CodeParser(std::string_view s) : s_(s) {}

  GodelNumber parse_all() {
    GodelNumber g = number();
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw CodecError("malformed Gödel number at " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Nat digits() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return parse_nat(s_.substr(start, pos_ - start));
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  GodelNumber exponent() {
    if (accept('(')) {
      GodelNumber g = number();
      if (!accept(')')) fail("expected ')'");
      return g;
    }
    return GodelNumber::from_value(digits());
  }

  GodelNumber number() {
    Nat first = digits();
    if (!accept('^')) return GodelNumber::from_value(std::move(first));
    std::vector<GodelNumber> exps;
    Nat base = std::move(first);
    for (;;) {
      if (base != nth_prime(exps.size())) fail("factors must run over consecutive primes from 2");
      exps.push_back(exponent());
      if (!accept('*')) break;
      base = digits();
      if (!accept('^')) fail("expected '^'");
    }
    return GodelNumber::from_exponents(std::move(exps));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

GodelNumber GodelNumber::parse(std::string_view text) { return CodeParser(text).parse_all(); }

bool operator==(const GodelNumber& a, const GodelNumber& b) {
  if (a.materialized_ != b.materialized_) return false;
  return a.materialized_ ? a.value_ == b.value_ : a.exponents_ == b.exponents_;
}

namespace {

void term_symbols(const Term& t, std::vector<std::uint32_t>& out) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      out.push_back(kZero);
      return;
    case Term::Kind::Var:
      out.push_back(kVarBase + t.index());
      return;
    case Term::Kind::Succ:
      out.push_back(kSucc);
      term_symbols(t.inner(), out);
      return;
    case Term::Kind::Add:
    case Term::Kind::Mul:
      out.push_back(t.kind() == Term::Kind::Add ? kAdd : kMul);
      term_symbols(t.left(), out);
      term_symbols(t.right(), out);
      return;
  }
}

void formula_symbols(const Formula& f, std::vector<std::uint32_t>& out) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
      out.push_back(kEq);
      term_symbols(f.lhs(), out);
      term_symbols(f.rhs(), out);
      return;
    case Formula::Kind::Not:
      out.push_back(kNot);
      formula_symbols(f.inner(), out);
      return;
    case Formula::Kind::Implies:
      out.push_back(kImplies);
      formula_symbols(f.antecedent(), out);
      formula_symbols(f.consequent(), out);
      return;
    case Formula::Kind::ForAll:
      out.push_back(kForAll);
      out.push_back(kVarBase + f.bound_var());
      formula_symbols(f.body(), out);
      return;
  }
}

class SymbolReader {
 public:
  explicit SymbolReader(const std::vector<std::uint32_t>& codes) : codes_(codes) {}

  Formula read_all() {
    Formula f = formula();
    if (pos_ != codes_.size()) fail("trailing symbols");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw CodecError("not a formula code: " + what + " at symbol " + std::to_string(pos_ + 1));
  }

  std::uint32_t next() {
    if (pos_ >= codes_.size()) fail("symbol string ends early");
    return codes_[pos_++];
  }

  Term term() {
    const std::uint32_t c = next();
    switch (c) {
      case kZero: return Term::zero();
      case kSucc: return Term::succ(term());
      case kAdd: {
        Term l = term();
        return Term::add(std::move(l), term());
      }
      case kMul: {
        Term l = term();
        return Term::mul(std::move(l), term());
      }
      default:
        if (c > kVarBase) return Term::var(c - kVarBase);
        --pos_;
        fail("symbol code " + std::to_string(c) + " cannot start a term");
    }
  }

  Formula formula() {
    const std::uint32_t c = next();
    switch (c) {
      case kEq: {
        Term l = term();
        return Formula::eq(std::move(l), term());
      }
      case kNot: return Formula::negate(formula());
      case kImplies: {
        Formula a = formula();
        return Formula::implies(std::move(a), formula());
      }
      case kForAll: {
        const std::uint32_t v = next();
        if (v <= kVarBase) {
          --pos_;
          fail("quantifier must be followed by a variable");
        }
        return Formula::forall(v - kVarBase, formula());
      }
      default:
        --pos_;
        fail("symbol code " + std::to_string(c) + " cannot start a formula");
    }
  }

  const std::vector<std::uint32_t>& codes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint32_t> symbol_codes(const Formula& f) {
  std::vector<std::uint32_t> out;
  formula_symbols(f, out);
  return out;
}

Formula formula_from_symbols(const std::vector<std::uint32_t>& codes) {
  return SymbolReader(codes).read_all();
}

GodelNumber encode_formula(const Formula& f) { return GodelNumber::from_exponents(symbol_codes(f)); }

Formula decode_formula(const GodelNumber& g) {
  const std::vector<GodelNumber> exps = g.prime_exponents();
  if (exps.empty()) {
    throw CodecError("not a formula code: " + (g.materialized() ? g.to_string() : "value") +
                     " is not a product of consecutive prime powers from 2");
  }
  std::vector<std::uint32_t> codes;
  codes.reserve(exps.size());
  for (const GodelNumber& e : exps) {
    const auto v = e.small_value();
    if (!v || *v > std::numeric_limits<std::uint32_t>::max() - 1) {
      throw CodecError("not a formula code: symbol code out of range");
    }
    codes.push_back(static_cast<std::uint32_t>(*v));
  }
  return formula_from_symbols(codes);
}

GodelNumber encode_sequence(const std::vector<GodelNumber>& items) {
  if (items.empty()) throw CodecError("cannot number an empty sequence");
  return GodelNumber::from_exponents(items);
}

std::vector<GodelNumber> decode_sequence(const GodelNumber& g) {
  std::vector<GodelNumber> exps = g.prime_exponents();
  if (exps.empty()) {
    throw CodecError("not a sequence code: prime support is not 2, 3, 5, ... without gaps");
  }
  return exps;
}

}  // namespace pa
