#include "pa/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pa/arithmetize.hpp"
#include "pa/beta.hpp"
#include "pa/eval.hpp"
#include "pa/godel.hpp"
#include "pa/pr.hpp"
#include "pa/proof.hpp"
#include "pa/syntax.hpp"

namespace pa {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::vector<Nat> parse_list(const std::string& text) {
  std::vector<Nat> values;
  if (text.empty()) return values;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw UsageError("empty entry in list '" + text + "'");
    values.push_back(parse_nat(item.substr(b, e - b + 1)));
  }
  return values;
}

std::vector<Nat> read_values(const std::string& path) {
  std::vector<Nat> values;
  std::istringstream in(read_file(path));
  for (std::string word; in >> word;) values.push_back(parse_nat(word));
  return values;
}

std::string join(const std::vector<Nat>& values, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += sep;
    s += to_string(values[i]);
  }
  return s;
}

json strings(const std::vector<Nat>& values) {
  json a = json::array();
  for (const auto& v : values) a.push_back(to_string(v));
  return a;
}

std::string verdict_name(int code) {
  switch (code) {
    case kExitTrue: return "true";
    case kExitFalse: return "false";
    case kExitUnknown: return "unknown";
  }
  return "error";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::True: return kExitTrue;
    case Verdict::False: return kExitFalse;
    case Verdict::Unknown: return kExitUnknown;
  }
  return kExitUsage;
}

// Collects the plain-text report and the JSON object of one command.
class Report {
 public:
  Report(std::string command, bool as_json) : command_(std::move(command)), json_(as_json) {}

  std::ostringstream text;
  json data = json::object();

  int finish(std::ostream& out, int code, const std::string& verdict = {}) {
    if (json_) {
      json j;
      j["command"] = command_;
      j["verdict"] = verdict.empty() ? verdict_name(code) : verdict;
      j["data"] = data;
      out << j.dump() << '\n';
    } else {
      out << text.str();
    }
    return code;
  }

 private:
  std::string command_;
  bool json_;
};

struct FunctionOptions {
  std::string name;
  std::string expr;
  std::string defs;

  void attach(CLI::App* cmd) {
    cmd->add_option("--fn", name, "Named function (standard library or --defs)");
    cmd->add_option("--expr", expr, "Function expression, e.g. R[P[1,1]; C[S; P[3,3]]]");
    cmd->add_option("--defs", defs, "File of `let name = expr` definitions");
  }

  PrFunction resolve() const {
    if (name.empty() == expr.empty()) throw UsageError("give exactly one of --fn and --expr");
    PrLibrary lib;
    const PrLibrary* env = &standard_library();
    if (!defs.empty()) {
      lib = parse_pr_program(read_file(defs), &standard_library());
      env = &lib;
    }
    if (!expr.empty()) return parse_pr_expression(expr, env);
    if (const PrFunction* f = env->find(name)) return *f;
    if (env != &standard_library()) {
      if (const PrFunction* f = standard_library().find(name)) return *f;
    }
    throw UsageError("unknown function '" + name + "'");
  }
};

std::vector<Nat> arguments_for(const PrFunction& f, const std::string& text) {
  std::vector<Nat> args = parse_list(text);
  if (args.size() != f.arity()) {
    throw UsageError("function takes " + std::to_string(f.arity()) + " arguments, got " +
                     std::to_string(args.size()));
  }
  return args;
}

Assignment instance_assignment(const CompiledFormula& cf, const std::vector<Nat>& args,
                               const Nat& output) {
  Assignment a;
  for (std::size_t k = 0; k < args.size(); ++k) a.set(cf.inputs[k], args[k]);
  a.set(cf.output, output);
  return a;
}

std::string call_text(const std::string& name, const std::vector<Nat>& args) {
  return name + "(" + join(args, ",") + ")";
}

// Every tuple in [0, max]^arity in lexicographic order.
void for_each_tuple(std::size_t arity, std::uint64_t max,
                    const std::function<void(const std::vector<Nat>&)>& visit) {
  std::vector<std::uint64_t> digits(arity, 0);
  for (;;) {
    visit(std::vector<Nat>(digits.begin(), digits.end()));
    std::size_t k = arity;
    while (k > 0 && digits[k - 1] == max) digits[--k] = 0;
    if (k == 0) return;
    ++digits[k - 1];
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Peano arithmetic toolkit: Gödel numbering, beta coding, primitive recursion, "
               "representing formulas, evaluation and proof checking"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Print one JSON object {command, verdict, data}");

  std::function<int()> action;
  auto on = [&](CLI::App* cmd, std::function<int()> f) {
    cmd->callback([&action, f] { action = f; });
  };

  // parse
  std::string formula_text;
  auto* parse_cmd = app.add_subcommand("parse", "Parse a formula and print its core form");
  parse_cmd->add_option("formula", formula_text)->required();
  on(parse_cmd, [&] {
    Report r("parse", as_json);
    const Formula f = parse_formula(formula_text);
    r.text << render(f) << '\n';
    r.data["formula"] = render(f);
    r.data["symbols"] = symbol_count(f);
    r.data["free_vars"] = free_vars(f);
    r.data["bounded"] = is_bounded(f);
    return r.finish(out, kExitTrue, "ok");
  });

  // godel-encode
  std::string proof_path;
  auto* genc = app.add_subcommand("godel-encode", "Gödel number of a formula or a proof file");
  genc->add_option("formula", formula_text);
  genc->add_option("--proof", proof_path, "Encode the lines of a proof file as a sequence");
  on(genc, [&] {
    Report r("godel-encode", as_json);
    if (formula_text.empty() == proof_path.empty()) {
      throw UsageError("give a formula or --proof, not both");
    }
    const GodelNumber g = proof_path.empty() ? encode_formula(parse_formula(formula_text))
                                             : encode_proof(parse_proof(read_file(proof_path)));
    r.text << g.to_string() << '\n';
    r.data["code"] = g.to_string();
    return r.finish(out, kExitTrue, "ok");
  });

  // godel-decode
  std::string code_text;
  bool as_sequence = false;
  auto* gdec = app.add_subcommand("godel-decode", "Formula, or formula sequence, of a Gödel number");
  gdec->add_option("code", code_text)->required();
  gdec->add_flag("--sequence", as_sequence, "Decode a sequence of formula codes");
  on(gdec, [&] {
    Report r("godel-decode", as_json);
    const GodelNumber g = GodelNumber::parse(code_text);
    std::vector<std::string> formulas;
    if (as_sequence) {
      for (const auto& item : decode_sequence(g)) formulas.push_back(render(decode_formula(item)));
    } else {
      formulas.push_back(render(decode_formula(g)));
    }
    for (const auto& f : formulas) r.text << f << '\n';
    r.data["formulas"] = formulas;
    return r.finish(out, kExitTrue, "ok");
  });

  // beta-encode
  std::string seq_text;
  auto* benc = app.add_subcommand("beta-encode", "Beta-function pair (n d) of a sequence");
  benc->add_option("--seq", seq_text, "Comma-separated naturals")->required();
  on(benc, [&] {
    Report r("beta-encode", as_json);
    const std::vector<Nat> seq = parse_list(seq_text);
    if (seq.empty()) throw UsageError("--seq needs at least one value");
    const BetaPair p = encode_seq(seq);
    r.text << to_string(p.n) << ' ' << to_string(p.d) << '\n';
    r.data["n"] = to_string(p.n);
    r.data["d"] = to_string(p.d);
    return r.finish(out, kExitTrue, "ok");
  });

  // beta-decode
  std::string n_text, d_text;
  std::size_t length = 0;
  auto* bdec = app.add_subcommand("beta-decode", "beta(n, d, i) for i below a length");
  bdec->add_option("n", n_text)->required();
  bdec->add_option("d", d_text)->required();
  bdec->add_option("--length", length, "Number of entries")->required();
  on(bdec, [&] {
    Report r("beta-decode", as_json);
    const auto values = decode_seq({parse_nat(n_text), parse_nat(d_text)}, length);
    r.text << join(values, " ") << '\n';
    r.data["values"] = strings(values);
    return r.finish(out, kExitTrue, "ok");
  });

  // pr-eval
  FunctionOptions fn;
  std::string args_text;
  std::uint64_t pr_budget = 100'000'000;
  auto* preval = app.add_subcommand("pr-eval", "Evaluate a primitive recursive function");
  fn.attach(preval);
  preval->add_option("--args", args_text, "Comma-separated arguments");
  preval->add_option("--budget", pr_budget, "Maximum number of evaluation steps");
  on(preval, [&] {
    Report r("pr-eval", as_json);
    const PrFunction f = fn.resolve();
    const auto a = arguments_for(f, args_text);
    const auto value = eval_pr(f, a, pr_budget);
    if (!value) {
      r.text << "unknown\n";
      r.data["budget"] = pr_budget;
      return r.finish(out, kExitUnknown);
    }
    r.text << to_string(*value) << '\n';
    r.data["value"] = to_string(*value);
    return r.finish(out, kExitTrue, "ok");
  });

  // compile
  FunctionOptions cfn;
  std::string instance_text;
  auto* comp = app.add_subcommand("compile", "Formula representing a function, with its slots");
  cfn.attach(comp);
  comp->add_option("--instance", instance_text,
                   "Comma-separated arguments then output: print the closed instance");
  on(comp, [&] {
    Report r("compile", as_json);
    const PrFunction f = cfn.resolve();
    const CompiledFormula cf = compile(f);
    if (!instance_text.empty()) {
      std::vector<Nat> values = parse_list(instance_text);
      if (values.size() != f.arity() + 1) {
        throw UsageError("--instance needs " + std::to_string(f.arity() + 1) + " values");
      }
      const Nat output = values.back();
      values.pop_back();
      const Formula inst = instance_formula(cf, values, output);
      r.text << render(inst) << '\n';
      r.data["formula"] = render(inst);
      return r.finish(out, kExitTrue, "ok");
    }
    r.text << render(cf.formula) << '\n' << slot_manifest(cf);
    r.data["formula"] = render(cf.formula);
    r.data["inputs"] = cf.inputs;
    r.data["output"] = cf.output;
    json slots = json::array();
    for (const auto& s : cf.slots) slots.push_back({{"var", s.var}, {"description", s.description}});
    r.data["slots"] = slots;
    return r.finish(out, kExitTrue, "ok");
  });

  // certify
  FunctionOptions kfn;
  std::string cert_out;
  auto* cert = app.add_subcommand("certify", "Value of a function and a certificate for it");
  kfn.attach(cert);
  cert->add_option("--args", args_text, "Comma-separated arguments");
  cert->add_option("--cert-out", cert_out, "Write the certificate values to this file");
  on(cert, [&] {
    Report r("certify", as_json);
    const PrFunction f = kfn.resolve();
    const auto a = arguments_for(f, args_text);
    const CompiledFormula cf = compile(f);
    const Certificate c = make_certificate(cf, f, a);
    const Nat output = *eval_pr(f, a, kDefaultCertificateBudget);
    const bool ok = check_certificate(cf, instance_assignment(cf, a, output), c);
    r.text << "output " << to_string(output) << '\n';
    r.text << "certificate " << c.values.size() << " values\n";
    if (cert_out.empty()) {
      r.text << join(c.values, "\n") << (c.values.empty() ? "" : "\n");
    } else {
      write_file(cert_out, join(c.values, "\n") + "\n");
    }
    r.text << "check " << (ok ? "true" : "false") << '\n';
    r.data["output"] = to_string(output);
    r.data["certificate"] = strings(c.values);
    return r.finish(out, ok ? kExitTrue : kExitFalse);
  });

  // eval
  std::string mode = "search";
  std::uint64_t budget = 10'000;
  std::string cert_path;
  auto* ev = app.add_subcommand("eval", "Truth of a closed formula over the naturals");
  ev->add_option("formula", formula_text)->required();
  ev->add_option("--mode", mode, "exact or search")
      ->check(CLI::IsMember({"exact", "search"}));
  ev->add_option("--budget", budget, "Search budget");
  ev->add_option("--cert", cert_path, "Witnesses for the unbounded existentials, in order");
  on(ev, [&] {
    Report r("eval", as_json);
    const Formula f = parse_formula(formula_text);
    if (!free_vars(f).empty()) throw UsageError("formula is not closed");
    Verdict v;
    if (!cert_path.empty()) {
      v = check_witnesses(f, Assignment{}, read_values(cert_path)) ? Verdict::True : Verdict::False;
    } else {
      v = eval_closed(f, mode == "exact" ? EvalMode::Exact : EvalMode::Search, budget);
    }
    r.text << to_string(v) << '\n';
    return r.finish(out, exit_code(v));
  });

  // proof-check
  std::string proof_file;
  auto* pc = app.add_subcommand("proof-check", "Check a proof file");
  pc->add_option("file", proof_file)->required();
  on(pc, [&] {
    Report r("proof-check", as_json);
    const ProofSequence p = parse_proof(read_file(proof_file));
    const CheckResult res = check_proof(p);
    if (res.ok) {
      for (std::size_t k = 0; k < p.lines.size(); ++k) {
        r.text << k + 1 << ". " << render(p.lines[k].formula) << "  [" << res.steps[k] << "]\n";
      }
      r.text << "accepted: " << render(*res.conclusion) << '\n';
      r.data["conclusion"] = render(*res.conclusion);
      r.data["steps"] = res.steps;
      return r.finish(out, kExitTrue, "accepted");
    }
    r.text << "rejected at line " << res.failed_line << ": " << res.reason << '\n';
    r.data["line"] = res.failed_line;
    r.data["reason"] = res.reason;
    return r.finish(out, kExitFalse, "rejected");
  });

  // proof-arith
  std::string x_text, y_text;
  auto* pa = app.add_subcommand("proof-arith", "The arithmetized proof relation xBy");
  pa->add_option("file", proof_file, "Proof file: print x, y and xBy");
  pa->add_option("--x", x_text, "Code of a proof sequence");
  pa->add_option("--y", y_text, "Code of a formula");
  on(pa, [&] {
    Report r("proof-arith", as_json);
    GodelNumber x = GodelNumber::from_value(1);
    GodelNumber y = GodelNumber::from_value(1);
    if (!proof_file.empty()) {
      if (!x_text.empty() || !y_text.empty()) throw UsageError("give a file or --x/--y, not both");
      const ProofSequence p = parse_proof(read_file(proof_file));
      x = encode_proof(p);
      y = encode_formula(p.lines.back().formula);
    } else {
      if (x_text.empty() || y_text.empty()) throw UsageError("give a proof file or both --x and --y");
      x = GodelNumber::parse(x_text);
      y = GodelNumber::parse(y_text);
    }
    const bool holds = proves_rel(x, y);
    r.text << "x = " << x.to_string() << '\n' << "y = " << y.to_string() << '\n';
    r.text << "xBy " << (holds ? "true" : "false") << '\n';
    r.data["x"] = x.to_string();
    r.data["y"] = y.to_string();
    return r.finish(out, holds ? kExitTrue : kExitFalse);
  });

  // represent-check
  FunctionOptions rfn;
  std::uint64_t max = 6;
  std::uint64_t rc_budget = 10'000;
  std::uint64_t slack = 3;
  auto* rc = app.add_subcommand("represent-check",
                                "Check the compiled formula of a function over an input grid");
  rfn.attach(rc);
  rc->add_option("--max", max, "Largest argument value");
  rc->add_option("--budget", rc_budget, "Search budget for wrong outputs");
  rc->add_option("--slack", slack, "Wrong outputs are tried up to value + slack");
  on(rc, [&] {
    Report r("represent-check", as_json);
    const PrFunction f = rfn.resolve();
    const CompiledFormula cf = compile(f);
    const std::string label = rfn.name.empty() ? "f" : rfn.name;
    std::size_t passed = 0, total = 0;
    json cells = json::array();
    for_each_tuple(f.arity(), max, [&](const std::vector<Nat>& a) {
      ++total;
      const Nat value = *eval_pr(f, a, kDefaultCertificateBudget);
      const Certificate c = make_certificate(cf, f, a);
      const bool certified = check_certificate(cf, instance_assignment(cf, a, value), c);
      std::vector<Nat> accepted_wrong;
      for (Nat w = 0; w <= value + slack; ++w) {
        if (w == value) continue;
        if (satisfies(cf.formula, instance_assignment(cf, a, w), rc_budget) == Verdict::True) {
          accepted_wrong.push_back(w);
        }
      }
      const bool ok = certified && accepted_wrong.empty();
      passed += ok;
      r.text << call_text(label, a) << " = " << to_string(value) << "  certificate "
             << (certified ? "ok" : "FAILED");
      if (!accepted_wrong.empty()) r.text << "  wrong outputs accepted: " << join(accepted_wrong, ",");
      r.text << '\n';
      cells.push_back({{"args", strings(a)}, {"value", to_string(value)}, {"ok", ok}});
    });
    r.text << (passed == total ? "OK " : "FAIL ") << passed << '/' << total << '\n';
    r.data["passed"] = passed;
    r.data["total"] = total;
    r.data["cells"] = cells;
    return r.finish(out, passed == total ? kExitTrue : kExitFalse);
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitTrue : kExitUsage;
  }

  try {
    return action();
  } catch (const UnboundedQuantifierError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ProofParseError& e) {
    err << "proof parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace pa
