#include "pa/eval.hpp"

#include <algorithm>
#include <limits>

namespace pa {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

Assignment::Assignment(std::initializer_list<std::pair<VarIndex, Nat>> values) {
  for (const auto& [var, value] : values) set(var, value);
}

void Assignment::set(VarIndex var, Nat value) {
  if (var >= values_.size()) {
    values_.resize(var + 1);
    bound_.resize(var + 1, 0);
  }
  values_[var] = std::move(value);
  bound_[var] = 1;
}

void Assignment::set(VarIndex var, std::uint64_t value) {
  if (var >= values_.size()) {
    values_.resize(var + 1);
    bound_.resize(var + 1, 0);
  }
  values_[var] = value;
  bound_[var] = 1;
}

void Assignment::erase(VarIndex var) {
  if (var < bound_.size()) bound_[var] = 0;
}

bool Assignment::contains(VarIndex var) const noexcept {
  return var < bound_.size() && bound_[var];
}

const Nat* Assignment::find(VarIndex var) const noexcept {
  return contains(var) ? &values_[var] : nullptr;
}

const Nat& Assignment::get(VarIndex var) const {
  if (const Nat* v = find(var)) return *v;
  throw EvalError("unbound variable x" + std::to_string(var));
}

Nat eval_term(const Term& t, const Assignment& a) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      return 0;
    case Term::Kind::Var:
      return a.get(t.index());
    case Term::Kind::Succ: {
      std::uint64_t n = 0;
      Term cur = t;
      while (cur.kind() == Term::Kind::Succ) {
        ++n;
        cur = cur.inner();
      }
      return eval_term(cur, a) + n;
    }
    case Term::Kind::Add:
      return eval_term(t.left(), a) + eval_term(t.right(), a);
    case Term::Kind::Mul:
      return eval_term(t.left(), a) * eval_term(t.right(), a);
  }
  return 0;
}

namespace {

// ---------------------------------------------------------------------------
// Lowering: formulas become a flat plan with the bounded shapes made explicit.

enum class Op : std::uint8_t {
  Eq, Less, Not, Implies, ForAll, Exists, BoundedForAll, BoundedExists
};

struct TermNode {
  Term::Kind kind;
  std::uint64_t succs = 0;  // Succ: number of stacked successors
  VarIndex var = 0;
  int left = -1;
  int right = -1;
};

struct PlanNode {
  Op op;
  VarIndex var = 0;
  int a = -1;   // term: Eq/Less left, bound of bounded quantifiers
  int b = -1;   // term: Eq/Less right
  int c0 = -1;  // sub-plan
  int c1 = -1;
};

struct Plan {
  std::vector<TermNode> terms;
  std::vector<PlanNode> nodes;
  int root = -1;
  bool has_unbounded = false;
};

// a < b in its expanded form, with the witness variable not free in a or b.
std::optional<std::pair<Term, Term>> match_less(const Formula& f) {
  if (f.kind() != Formula::Kind::Not) return std::nullopt;
  const Formula all = f.inner();
  if (all.kind() != Formula::Kind::ForAll) return std::nullopt;
  const Formula neg = all.body();
  if (neg.kind() != Formula::Kind::Not) return std::nullopt;
  const Formula eq = neg.inner();
  if (eq.kind() != Formula::Kind::Eq) return std::nullopt;
  const Term sum = eq.lhs();
  if (sum.kind() != Term::Kind::Add) return std::nullopt;
  const Term succ = sum.right();
  if (succ.kind() != Term::Kind::Succ) return std::nullopt;
  const Term w = succ.inner();
  if (w.kind() != Term::Kind::Var || w.index() != all.bound_var()) return std::nullopt;
  const Term a = sum.left();
  const Term b = eq.rhs();
  if (vars(a).contains(w.index()) || vars(b).contains(w.index())) return std::nullopt;
  return std::make_pair(a, b);
}

// The bound t when `guard` is  x < t  with x not free in t.
std::optional<Term> match_guard(const Formula& guard, VarIndex x) {
  auto lt = match_less(guard);
  if (!lt) return std::nullopt;
  const Term& lhs = lt->first;
  if (lhs.kind() != Term::Kind::Var || lhs.index() != x) return std::nullopt;
  if (vars(lt->second).contains(x)) return std::nullopt;
  return lt->second;
}

class Lowerer {
 public:
  explicit Lowerer(Plan& plan) : plan_(plan) {}

  int term(const Term& t) {
    TermNode node{t.kind()};
    switch (t.kind()) {
      case Term::Kind::Zero:
        break;
      case Term::Kind::Var:
        node.var = t.index();
        break;
      case Term::Kind::Succ: {
        Term cur = t;
        while (cur.kind() == Term::Kind::Succ) {
          ++node.succs;
          cur = cur.inner();
        }
        node.left = term(cur);
        break;
      }
      case Term::Kind::Add:
      case Term::Kind::Mul:
        node.left = term(t.left());
        node.right = term(t.right());
        break;
    }
    plan_.terms.push_back(node);
    return static_cast<int>(plan_.terms.size() - 1);
  }

  int formula(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Eq: {
        const int a = term(f.lhs());
        const int b = term(f.rhs());
        return push({Op::Eq, 0, a, b});
      }
      case Formula::Kind::Not: {
        if (auto lt = match_less(f)) {
          const int a = term(lt->first);
          const int b = term(lt->second);
          return push({Op::Less, 0, a, b});
        }
        const Formula inner = f.inner();
        if (inner.kind() == Formula::Kind::ForAll && inner.body().kind() == Formula::Kind::Not) {
          const VarIndex x = inner.bound_var();
          const Formula matrix = inner.body().inner();
          // ~(Ax)~~((x < t) -> ~F)  is  (Ex)(x < t & F)
          if (matrix.kind() == Formula::Kind::Not &&
              matrix.inner().kind() == Formula::Kind::Implies &&
              matrix.inner().consequent().kind() == Formula::Kind::Not) {
            if (auto bound = match_guard(matrix.inner().antecedent(), x)) {
              const int t = term(*bound);
              const int body = formula(matrix.inner().consequent().inner());
              return push({Op::BoundedExists, x, t, -1, body});
            }
          }
          plan_.has_unbounded = true;
          const int body = formula(matrix);
          return push({Op::Exists, x, -1, -1, body});
        }
        const int c = formula(inner);
        return push({Op::Not, 0, -1, -1, c});
      }
      case Formula::Kind::Implies: {
        const int c0 = formula(f.antecedent());
        const int c1 = formula(f.consequent());
        return push({Op::Implies, 0, -1, -1, c0, c1});
      }
      case Formula::Kind::ForAll: {
        const VarIndex x = f.bound_var();
        const Formula body = f.body();
        if (body.kind() == Formula::Kind::Implies) {
          if (auto bound = match_guard(body.antecedent(), x)) {
            const int t = term(*bound);
            const int c = formula(body.consequent());
            return push({Op::BoundedForAll, x, t, -1, c});
          }
        }
        plan_.has_unbounded = true;
        const int c = formula(body);
        return push({Op::ForAll, x, -1, -1, c});
      }
    }
    throw std::logic_error("unreachable formula kind");
  }

 private:
  int push(PlanNode n) {
    plan_.nodes.push_back(n);
    return static_cast<int>(plan_.nodes.size() - 1);
  }

  Plan& plan_;
};

Plan lower(const Formula& f) {
  Plan plan;
  plan.root = Lowerer(plan).formula(f);
  return plan;
}

// ---------------------------------------------------------------------------
// Evaluation

enum class Regime : std::uint8_t { Exact, Search, Certificate };

Verdict flip(Verdict v) {
  switch (v) {
    case Verdict::True: return Verdict::False;
    case Verdict::False: return Verdict::True;
    default: return Verdict::Unknown;
  }
}

Verdict kleene_implies(Verdict a, Verdict b) {
  if (a == Verdict::False || b == Verdict::True) return Verdict::True;
  if (a == Verdict::True && b == Verdict::False) return Verdict::False;
  return Verdict::Unknown;
}

// Restores a variable's previous binding when a quantifier scope ends.
class ScopedBinding {
 public:
  ScopedBinding(Assignment& env, VarIndex var) : env_(env), var_(var) {
    if (const Nat* old = env.find(var)) saved_ = *old;
  }
  ~ScopedBinding() {
    if (saved_) {
      env_.set(var_, std::move(*saved_));
    } else {
      env_.erase(var_);
    }
  }
  ScopedBinding(const ScopedBinding&) = delete;
  ScopedBinding& operator=(const ScopedBinding&) = delete;

  void set(Nat value) { env_.set(var_, std::move(value)); }
  void set(std::uint64_t value) { env_.set(var_, value); }

 private:
  Assignment& env_;
  VarIndex var_;
  std::optional<Nat> saved_;
};

class Engine {
 public:
  Engine(const Plan& plan, Regime regime, std::uint64_t budget, Assignment env)
      : plan_(plan), regime_(regime), budget_(budget), env_(std::move(env)) {}

  void set_source(WitnessSource* source) { source_ = source; }
  void set_trace(std::vector<Nat>* trace) { trace_ = trace; }

  // Search runs in rounds with witness ranges 1, 2, 4, ... up to the budget,
  // all drawing on the same step budget, so nested quantifiers interleave.
  // Only instances outside the previous round's range are charged.
  Verdict run() {
    if (regime_ != Regime::Search) return eval(plan_.root);
    for (range_ = std::min<std::uint64_t>(1, budget_);; range_ = std::min(range_ * 2, budget_)) {
      if (trace_) trace_->clear();
      previous_range_ = range_ / 2;
      const Verdict v = eval(plan_.root);
      if (v != Verdict::Unknown || range_ >= budget_ || exhausted()) return v;
    }
  }

 private:
  // One unbounded quantifier instance in search. Converts to false when the
  // instance is new and the budget is spent.
  class Charge {
   public:
    Charge(Engine& e, std::uint64_t value) : e_(e) {
      fresh_ = e.fresh_depth_ > 0 || value >= e.previous_range_;
      if (!fresh_) return;
      if (e.exhausted()) {
        ok_ = false;
        fresh_ = false;
        return;
      }
      ++e.steps_;
      ++e.fresh_depth_;
    }
    ~Charge() {
      if (fresh_) --e_.fresh_depth_;
    }
    Charge(const Charge&) = delete;
    Charge& operator=(const Charge&) = delete;
    explicit operator bool() const { return ok_; }

   private:
    Engine& e_;
    bool fresh_ = false;
    bool ok_ = true;
  };

  bool strict() const { return regime_ == Regime::Certificate; }
  bool exhausted() const { return steps_ >= budget_; }

  Nat term(int idx) const {
    const TermNode& t = plan_.terms[static_cast<std::size_t>(idx)];
    switch (t.kind) {
      case Term::Kind::Zero:
        return 0;
      case Term::Kind::Var:
        return env_.get(t.var);
      case Term::Kind::Succ:
        return term(t.left) + t.succs;
      case Term::Kind::Add:
        return term(t.left) + term(t.right);
      case Term::Kind::Mul:
        return term(t.left) * term(t.right);
    }
    return 0;
  }

  // Evaluates in 64 bits; false on overflow or a wide variable.
  bool term_small(int idx, std::uint64_t& out) const {
    const TermNode& t = plan_.terms[static_cast<std::size_t>(idx)];
    std::uint64_t l = 0, r = 0;
    switch (t.kind) {
      case Term::Kind::Zero:
        out = 0;
        return true;
      case Term::Kind::Var: {
        const Nat& v = env_.get(t.var);
        if (!mpz_fits_ulong_p(v.backend().data())) return false;
        out = mpz_get_ui(v.backend().data());
        return true;
      }
      case Term::Kind::Succ:
        return term_small(t.left, l) && !__builtin_add_overflow(l, t.succs, &out);
      case Term::Kind::Add:
        return term_small(t.left, l) && term_small(t.right, r) && !__builtin_add_overflow(l, r, &out);
      case Term::Kind::Mul:
        return term_small(t.left, l) && term_small(t.right, r) && !__builtin_mul_overflow(l, r, &out);
    }
    return false;
  }

  // Three-way comparison of two terms.
  int compare(int a, int b) const {
    std::uint64_t x = 0, y = 0;
    if (term_small(a, x) && term_small(b, y)) return x < y ? -1 : (x > y ? 1 : 0);
    const Nat l = term(a);
    const Nat r = term(b);
    return l < r ? -1 : (l > r ? 1 : 0);
  }

  std::uint64_t scan_length(int bound_term) const {
    std::uint64_t small = 0;
    if (term_small(bound_term, small) &&
        small <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      return small;
    }
    const Nat bound = term(bound_term);
    if (bound > std::numeric_limits<std::int64_t>::max()) {
      throw EvalError("bounded quantifier range " + to_string(bound) + " is too large to scan");
    }
    return bound.convert_to<std::uint64_t>();
  }

  void count_iteration() {
    if (strict() && ++iterations_ > kMaxCertificateIterations) {
      throw EvalError("certificate check exceeds the iteration limit");
    }
  }

  Verdict eval(int idx) {
    const PlanNode& n = plan_.nodes[static_cast<std::size_t>(idx)];
    switch (n.op) {
      case Op::Eq:
        return compare(n.a, n.b) == 0 ? Verdict::True : Verdict::False;
      case Op::Less:
        return compare(n.a, n.b) < 0 ? Verdict::True : Verdict::False;
      case Op::Not:
        return flip(eval(n.c0));
      case Op::Implies: {
        const Verdict a = eval(n.c0);
        if (a == Verdict::False && !strict()) return Verdict::True;
        return kleene_implies(a, eval(n.c1));
      }
      case Op::BoundedForAll:
      case Op::BoundedExists: {
        const bool universal = n.op == Op::BoundedForAll;
        const Verdict decisive = universal ? Verdict::False : Verdict::True;
        const std::uint64_t length = scan_length(n.a);
        ScopedBinding bind(env_, n.var);
        bool decided = false, unknown = false;
        for (std::uint64_t i = 0; i < length; ++i) {
          count_iteration();
          bind.set(i);
          const Verdict r = eval(n.c0);
          if (r == decisive) {
            decided = true;
            if (!strict()) break;
          } else if (r == Verdict::Unknown) {
            unknown = true;
            if (exhausted()) break;
          }
        }
        if (decided) return decisive;
        if (unknown) return Verdict::Unknown;
        return flip(decisive);
      }
      case Op::ForAll: {
        if (regime_ == Regime::Exact) {
          throw UnboundedQuantifierError("unbounded universal quantifier on x" +
                                         std::to_string(n.var));
        }
        if (regime_ == Regime::Certificate) {
          throw EvalError("a certificate cannot settle the unbounded universal quantifier on x" +
                          std::to_string(n.var));
        }
        ScopedBinding bind(env_, n.var);
        for (std::uint64_t i = 0; i < range_; ++i) {
          Charge charge(*this, i);
          if (!charge) break;
          bind.set(i);
          if (eval(n.c0) == Verdict::False) return Verdict::False;
        }
        return Verdict::Unknown;
      }
      case Op::Exists: {
        if (regime_ == Regime::Exact) {
          throw UnboundedQuantifierError("unbounded existential quantifier on x" +
                                         std::to_string(n.var));
        }
        ScopedBinding bind(env_, n.var);
        if (regime_ == Regime::Certificate) {
          bind.set(source_->witness(n.var, env_));
          return eval(n.c0);
        }
        for (std::uint64_t i = 0; i < range_; ++i) {
          Charge charge(*this, i);
          if (!charge) break;
          const std::size_t mark = trace_ ? trace_->size() : 0;
          if (trace_) trace_->push_back(i);
          bind.set(i);
          if (eval(n.c0) == Verdict::True) return Verdict::True;
          if (trace_) trace_->resize(mark);
        }
        return Verdict::Unknown;
      }
    }
    throw std::logic_error("unreachable plan node");
  }

  const Plan& plan_;
  Regime regime_;
  std::uint64_t budget_;
  Assignment env_;
  WitnessSource* source_ = nullptr;
  std::vector<Nat>* trace_ = nullptr;
  std::uint64_t steps_ = 0;
  std::uint64_t range_ = 0;
  std::uint64_t previous_range_ = 0;
  std::uint64_t fresh_depth_ = 0;
  std::uint64_t iterations_ = 0;
};

void require_bound(const Formula& f, const Assignment& a) {
  for (VarIndex v : free_vars(f)) {
    if (!a.contains(v)) throw EvalError("unbound variable x" + std::to_string(v));
  }
}

class ListSource : public WitnessSource {
 public:
  explicit ListSource(std::span<const Nat> values, const CompiledFormula* cf = nullptr)
      : values_(values), cf_(cf) {}

  Nat witness(VarIndex var, const Assignment&) override {
    if (cf_ && !cf_->find_slot(var)) {
      throw CertificateError("existential on x" + std::to_string(var) +
                             " is not a slot of the compiled formula");
    }
    if (next_ >= values_.size()) {
      throw CertificateError("slot-count mismatch: certificate has only " +
                             std::to_string(values_.size()) + " values");
    }
    return values_[next_++];
  }

  void require_consumed() const {
    if (next_ != values_.size()) {
      throw CertificateError("slot-count mismatch: certificate has " +
                             std::to_string(values_.size()) + " values but the instance uses " +
                             std::to_string(next_));
    }
  }

 private:
  std::span<const Nat> values_;
  const CompiledFormula* cf_;
  std::size_t next_ = 0;
};

}  // namespace

bool is_bounded(const Formula& f) { return !lower(f).has_unbounded; }

Verdict satisfies(const Formula& f, const Assignment& a, std::uint64_t budget) {
  require_bound(f, a);
  const Plan plan = lower(f);
  return Engine(plan, Regime::Search, budget, a).run();
}

Verdict eval_closed(const Formula& f, EvalMode mode, std::uint64_t budget) {
  if (!free_vars(f).empty()) throw EvalError("formula is not closed");
  const Plan plan = lower(f);
  if (mode == EvalMode::Exact) {
    if (plan.has_unbounded) {
      throw UnboundedQuantifierError("exact mode needs every quantifier to be bounded");
    }
    return Engine(plan, Regime::Exact, 0, Assignment{}).run();
  }
  return Engine(plan, Regime::Search, budget, Assignment{}).run();
}

bool evaluate_with_witnesses(const Formula& f, const Assignment& a, WitnessSource& source) {
  require_bound(f, a);
  const Plan plan = lower(f);
  Engine engine(plan, Regime::Certificate, 0, a);
  engine.set_source(&source);
  return engine.run() == Verdict::True;
}

bool check_witnesses(const Formula& f, const Assignment& a, std::span<const Nat> witnesses) {
  ListSource source(witnesses);
  const bool ok = evaluate_with_witnesses(f, a, source);
  source.require_consumed();
  return ok;
}

bool check_certificate(const CompiledFormula& cf, const Assignment& a, const Certificate& cert) {
  for (VarIndex v : cf.inputs) a.get(v);
  a.get(cf.output);
  ListSource source(cert.values, &cf);
  const bool ok = evaluate_with_witnesses(cf.formula, a, source);
  source.require_consumed();
  return ok;
}

std::optional<Certificate> search_witnesses(const Formula& f, const Assignment& a,
                                            std::uint64_t budget) {
  require_bound(f, a);
  const Plan plan = lower(f);
  std::vector<Nat> trace;
  Engine engine(plan, Regime::Search, budget, a);
  engine.set_trace(&trace);
  if (engine.run() != Verdict::True) return std::nullopt;
  return Certificate{std::move(trace)};
}

}  // namespace pa
