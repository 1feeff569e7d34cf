#include "pa/arithmetize.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "pa/eval.hpp"

namespace pa {

const Slot* CompiledFormula::find_slot(VarIndex var) const {
  auto it = std::lower_bound(slots.begin(), slots.end(), var,
                             [](const Slot& s, VarIndex v) { return s.var < v; });
  if (it == slots.end() || it->var != var) return nullptr;
  return &*it;
}

namespace {

Term one() { return Term::succ(Term::zero()); }

// 1 + (i + 1) * v
Term modulus_term(const Term& index, VarIndex v) {
  return Term::add(one(), Term::mul(Term::add(index, one()), Term::var(v)));
}

Formula bt(VarIndex u, VarIndex v, const Term& index, VarIndex w, VarIndex q, FreshVars& fresh) {
  const Term m = modulus_term(index, v);
  const Formula division =
      Formula::eq(Term::var(u), Term::add(Term::mul(m, Term::var(q)), Term::var(w)));
  return exists(q, conj(division, less(Term::var(w), m, fresh)));
}

// Folds to A1 & (A2 & (... & An)).
Formula conj_all(std::vector<Formula> parts) {
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = conj(parts[i], acc);
  return acc;
}

class Compiler {
 public:
  Compiler(CompiledFormula& out, VarIndex first_free) : out_(out), fresh_(first_free) {}

  Formula node(const PrFunction& f, const std::vector<VarIndex>& in, VarIndex result,
               const std::string& path) {
    switch (f.kind()) {
      case PrFunction::Kind::Zero:
        return Formula::eq(Term::var(result), Term::zero());
      case PrFunction::Kind::Succ:
        return Formula::eq(Term::var(result), Term::succ(Term::var(in[0])));
      case PrFunction::Kind::Proj:
        return Formula::eq(Term::var(result), Term::var(in[f.proj_index() - 1]));
      case PrFunction::Kind::Comp:
        return composition(f, in, result, path);
      case PrFunction::Kind::PrimRec:
        return recursion(f, in, result, path);
    }
    throw std::logic_error("unreachable function kind");
  }

 private:
  Formula composition(const PrFunction& f, const std::vector<VarIndex>& in, VarIndex result,
                      const std::string& path) {
    const auto& inners = f.inners();
    std::vector<VarIndex> ys;
    for (std::size_t j = 0; j < inners.size(); ++j) {
      const VarIndex y = fresh_.take();
      Slot slot;
      slot.var = y;
      slot.role = Slot::Role::InnerValue;
      slot.description = "value of inner function " + std::to_string(j + 1) + " of composition " + path;
      slot.function = inners[j];
      slot.args = in;
      add_slot(std::move(slot));
      ys.push_back(y);
    }
    std::vector<Formula> parts;
    for (std::size_t j = 0; j < inners.size(); ++j) {
      parts.push_back(node(inners[j], in, ys[j], path + ".g" + std::to_string(j + 1)));
    }
    parts.push_back(node(f.outer(), ys, result, path + ".h"));
    Formula body = conj_all(std::move(parts));
    for (std::size_t j = ys.size(); j-- > 0;) body = exists(ys[j], body);
    return body;
  }

  Formula recursion(const PrFunction& f, const std::vector<VarIndex>& in, VarIndex result,
                    const std::string& path) {
    const std::vector<VarIndex> params(in.begin(), in.end() - 1);
    const VarIndex y = in.back();

    const VarIndex u = fresh_.take();
    const VarIndex v = fresh_.take();
    for (VarIndex var : {u, v}) {
      Slot slot;
      slot.var = var;
      slot.role = var == u ? Slot::Role::SequenceCode : Slot::Role::SequenceFactorial;
      slot.description = std::string(var == u ? "sequence code u" : "factorial v") +
                         " of recursion " + path;
      slot.function = f;
      slot.args = in;
      add_slot(std::move(slot));
    }

    // (Ew0)(Bt(u, v, 0, w0) & G(params, w0))
    const VarIndex w0 = entry_slot(u, v, Term::zero(), "base value", path);
    const Formula bt0 = bt_with_slot(u, v, Term::zero(), w0, path);
    const Formula base = exists(w0, conj(bt0, node(f.base(), params, w0, path + ".base")));

    const Formula last = bt_with_slot(u, v, Term::var(y), result, path);

    // (Aw)(w < y -> (Ea)(Eb)(Bt(u, v, w, a) & Bt(u, v, w + 1, b) & H(params, w, a, b)))
    const VarIndex w = fresh_.take();
    const Formula guard = less(Term::var(w), Term::var(y), fresh_);
    const Term next = Term::add(Term::var(w), one());
    const VarIndex a = entry_slot(u, v, Term::var(w), "value at w", path);
    const VarIndex b = entry_slot(u, v, next, "value at w + 1", path);
    const Formula bta = bt_with_slot(u, v, Term::var(w), a, path);
    const Formula btb = bt_with_slot(u, v, next, b, path);
    std::vector<VarIndex> step_in = params;
    step_in.insert(step_in.end(), {w, a, b});
    // H reads (params, w, a) and produces b.
    std::vector<VarIndex> h_in(step_in.begin(), step_in.end() - 1);
    const Formula h = node(f.step(), h_in, b, path + ".step");
    const Formula step =
        Formula::forall(w, Formula::implies(guard, exists(a, exists(b, conj_all({bta, btb, h})))));

    return exists(u, exists(v, conj(base, conj(last, step))));
  }

  VarIndex entry_slot(VarIndex u, VarIndex v, const Term& index, const std::string& what,
                      const std::string& path) {
    Slot slot;
    slot.var = fresh_.take();
    slot.role = Slot::Role::SequenceEntry;
    slot.description = what + " in recursion " + path;
    slot.code_var = u;
    slot.factorial_var = v;
    slot.index = index;
    const VarIndex var = slot.var;
    add_slot(std::move(slot));
    return var;
  }

  Formula bt_with_slot(VarIndex u, VarIndex v, const Term& index, VarIndex w,
                       const std::string& path) {
    Slot slot;
    slot.var = fresh_.take();
    slot.role = Slot::Role::BetaQuotient;
    slot.description = "quotient for Bt(u, v, " + render(index) + ", x" + std::to_string(w) +
                       ") in recursion " + path;
    slot.code_var = u;
    slot.factorial_var = v;
    slot.index = index;
    const VarIndex q = slot.var;
    add_slot(std::move(slot));
    return bt(u, v, index, w, q, fresh_);
  }

  void add_slot(Slot slot) { out_.slots.push_back(std::move(slot)); }

  CompiledFormula& out_;
  FreshVars fresh_;
};

using CacheKey = std::pair<VarIndex, std::vector<Nat>>;

class ComputingSource : public WitnessSource {
 public:
  ComputingSource(const CompiledFormula& cf, std::uint64_t budget) : cf_(cf), budget_(budget) {}

  Nat witness(VarIndex var, const Assignment& env) override {
    const Slot* slot = cf_.find_slot(var);
    if (!slot) throw std::logic_error("existential on a non-slot variable");
    Nat value;
    switch (slot->role) {
      case Slot::Role::SequenceCode:
        value = pair_for(*slot, env).n;
        break;
      case Slot::Role::SequenceFactorial:
        value = pair_for(*slot, env).d;
        break;
      case Slot::Role::SequenceEntry:
        value = beta(env.get(slot->code_var), env.get(slot->factorial_var),
                     eval_term(slot->index, env));
        break;
      case Slot::Role::BetaQuotient:
        value = env.get(slot->code_var) /
                beta_modulus(env.get(slot->factorial_var), eval_term(slot->index, env));
        break;
      case Slot::Role::InnerValue:
        value = run(*slot->function, arguments(*slot, env));
        break;
    }
    values_.push_back(value);
    return value;
  }

  std::vector<Nat> take() { return std::move(values_); }

 private:
  std::vector<Nat> arguments(const Slot& slot, const Assignment& env) const {
    std::vector<Nat> args;
    args.reserve(slot.args.size());
    for (VarIndex v : slot.args) args.push_back(env.get(v));
    return args;
  }

  Nat run(const PrFunction& f, const std::vector<Nat>& args) const {
    auto r = eval_pr(f, args, budget_);
    if (!r) throw BudgetError("evaluation budget of " + std::to_string(budget_) + " nodes exhausted");
    return *r;
  }

  // The pair of a recursion slot depends on the values of u's arguments; u and
  // v share it, so key it on the u variable.
  const BetaPair& pair_for(const Slot& slot, const Assignment& env) {
    std::vector<Nat> args = arguments(slot, env);
    const VarIndex key_var = slot.role == Slot::Role::SequenceCode ? slot.var : slot.var - 1;
    CacheKey key{key_var, args};
    if (auto it = pairs_.find(key); it != pairs_.end()) return it->second;

    const PrFunction& f = *slot.function;
    std::vector<Nat> params(args.begin(), args.end() - 1);
    const std::uint64_t y = to_u64(args.back());
    std::vector<Nat> sequence;
    sequence.reserve(y + 1);
    sequence.push_back(run(f.base(), params));
    std::vector<Nat> step_args = params;
    step_args.resize(params.size() + 2);
    for (std::uint64_t i = 0; i < y; ++i) {
      step_args[params.size()] = i;
      step_args[params.size() + 1] = sequence.back();
      sequence.push_back(run(f.step(), step_args));
    }
    return pairs_.emplace(std::move(key), encode_seq(sequence)).first->second;
  }

  const CompiledFormula& cf_;
  std::uint64_t budget_;
  std::map<CacheKey, BetaPair> pairs_;
  std::vector<Nat> values_;
};

}  // namespace

Formula bt_formula(VarIndex u, VarIndex v, VarIndex i, VarIndex w) {
  if (u == v || u == i || u == w || v == i || v == w || i == w) {
    throw std::invalid_argument("Bt needs four distinct variables");
  }
  FreshVars fresh(std::max({u, v, i, w}) + 1);
  const VarIndex q = fresh.take();
  return bt(u, v, Term::var(i), w, q, fresh);
}

CompiledFormula compile(const PrFunction& f) {
  require_valid(f);
  CompiledFormula cf;
  const auto n = static_cast<VarIndex>(f.arity());
  for (VarIndex k = 1; k <= n; ++k) cf.inputs.push_back(k);
  cf.output = n + 1;
  Compiler compiler(cf, n + 2);
  Formula body = compiler.node(f, cf.inputs, cf.output, "f");
  // Inputs the function ignores are mentioned vacuously, keeping them free.
  const std::set<VarIndex> free = free_vars(body);
  for (VarIndex k : cf.inputs) {
    if (!free.contains(k)) body = conj(body, Formula::eq(Term::var(k), Term::var(k)));
  }
  cf.formula = body;
  return cf;
}

Certificate make_certificate(const CompiledFormula& cf, const PrFunction& f,
                             std::span<const Nat> args, std::uint64_t budget) {
  if (args.size() != cf.inputs.size() || args.size() != f.arity()) {
    throw ArityError("expected " + std::to_string(cf.inputs.size()) + " arguments, got " +
                     std::to_string(args.size()));
  }
  auto output = eval_pr(f, args, budget);
  if (!output) throw BudgetError("evaluation budget of " + std::to_string(budget) + " nodes exhausted");
  Assignment a;
  for (std::size_t k = 0; k < args.size(); ++k) a.set(cf.inputs[k], args[k]);
  a.set(cf.output, *output);
  ComputingSource source(cf, budget);
  if (!evaluate_with_witnesses(cf.formula, a, source)) {
    throw std::logic_error("generated certificate does not verify");
  }
  return Certificate{source.take()};
}

std::string slot_manifest(const CompiledFormula& cf) {
  std::ostringstream os;
  for (std::size_t k = 0; k < cf.slots.size(); ++k) {
    os << "slot " << k + 1 << ": x" << cf.slots[k].var << ' ' << cf.slots[k].description << '\n';
  }
  return os.str();
}

Formula instance_formula(const CompiledFormula& cf, std::span<const Nat> args, const Nat& output) {
  if (args.size() != cf.inputs.size()) {
    throw ArityError("expected " + std::to_string(cf.inputs.size()) + " arguments, got " +
                     std::to_string(args.size()));
  }
  Formula f = cf.formula;
  for (std::size_t k = 0; k < args.size(); ++k) {
    f = substitute(f, cf.inputs[k], numeral(to_u64(args[k])));
  }
  return substitute(f, cf.output, numeral(to_u64(output)));
}

}  // namespace pa
