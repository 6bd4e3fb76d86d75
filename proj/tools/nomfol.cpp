// nomfol: parse, evaluate, prove, check, search for countermodels, run the
// property suites and the point sketch from the shell.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nomfol/nomfol.hpp"

using namespace nomfol;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUnknown = 2;
constexpr int kUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string sig_path;
  std::string model_path;
  std::size_t depth = 4;
  std::size_t max_k = 2;
  std::size_t n = 100;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool machine = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Signature load_signature(const Config& cfg) {
  if (cfg.sig_path.empty()) return {};
  return parse_signature(slurp(cfg.sig_path));
}

ProverBudget budget_of(const Config& cfg) {
  ProverBudget b;
  b.max_depth = cfg.depth;
  return b;
}

int cmd_parse(const Config& cfg, const std::string& text) {
  Signature sig = load_signature(cfg);
  if (text.find("|-") != std::string::npos) {
    Sequent s = parse_sequent_text(text, sig);
    std::cout << (cfg.machine ? "SEQUENT " : "") << s.show() << '\n';
    if (cfg.machine) std::cout << "FREE " << show(s.free_atoms()) << '\n';
  } else {
    Formula f = parse_formula_declaring(text, sig);
    std::cout << (cfg.machine ? "FORMULA " : "") << pretty(f) << '\n';
    if (cfg.machine) std::cout << "FREE " << show(f.free_atoms()) << '\n';
  }
  return kOk;
}

int cmd_eval(const Config& cfg, const std::string& text) {
  if (cfg.model_path.empty()) throw UsageError("eval needs --model");
  OrdinaryModel N = parse_model(slurp(cfg.model_path), load_signature(cfg));
  Formula f = parse_formula(text, N.sig);
  TableFun t = interpret(f, lift_interpretation(N));
  if (cfg.machine) {
    std::cout << "DEPS";
    for (Atom a : t.deps()) std::cout << ' ' << a.name();
    std::cout << "\nTABLE";
    for (Value v : t.table()) std::cout << ' ' << v;
    std::cout << "\nSUPPORT";
    for (Atom a : support(t)) std::cout << ' ' << a.name();
    std::cout << '\n';
  } else {
    std::cout << t.show() << "  support: " << show(support(t)) << '\n';
  }
  return kOk;
}

int cmd_prove(const Config& cfg, const std::string& text) {
  Signature sig = load_signature(cfg);
  Sequent s = parse_sequent_text(text, sig);
  ProveResult r = prove(s, sig, budget_of(cfg));
  if (!r) {
    std::cout << "UNKNOWN\n";
    if (cfg.machine) std::cout << "NODES " << r.stats.nodes << '\n';
    return kUnknown;
  }
  std::cout << write_proof(*r.proof);
  if (cfg.machine) std::cout << "PROVED size " << r.proof->size() << " height " << r.proof->height() << '\n';
  return kOk;
}

int cmd_check(const Config& cfg, const std::string& path) {
  Signature sig = load_signature(cfg);
  Proof p = read_proof(slurp(path), sig);
  CheckResult c = check_proof(p);
  if (c.ok) {
    std::cout << "VALID " << p.conclusion.show() << '\n';
    return kOk;
  }
  std::cout << "INVALID " << c.show() << '\n';
  return kFailed;
}

int cmd_countermodel(const Config& cfg, const std::string& text) {
  Signature sig = load_signature(cfg);
  Sequent s = parse_sequent_text(text, sig);
  CountermodelResult r = find_countermodel(s, sig, cfg.max_k);
  if (!r) {
    std::cout << "NOT FOUND up to k=" << cfg.max_k << (r.exhausted ? " (budget exhausted)" : "") << '\n';
    return kUnknown;
  }
  std::cout << print_model(r.found->model) << "# valuation " << r.found->valuation.show() << '\n';
  return kOk;
}

int cmd_axioms(const Config& cfg, const std::string& suite) {
  bool known = false;
  for (const auto& n : suite_names()) known = known || n == suite;
  if (!known) throw UsageError("unknown suite '" + suite + "'");
  SuiteReport r = run_named_suite(suite, {cfg.n, cfg.seed, cfg.jobs});
  std::cout << r.to_text();
  return r.ok() ? kOk : kFailed;
}

int cmd_sketch(const Config& cfg, const std::string& text, std::size_t steps, const std::vector<std::string>& given) {
  Signature sig = load_signature(cfg);
  Formula seed = parse_formula_declaring(text, sig);
  if (sig.predicates().empty()) sig.declare_predicate("P", 1);
  SketchOptions opts;
  opts.budget.max_depth = cfg.depth;
  opts.max_k = cfg.max_k;
  if (prove(Sequent{FormulaSet({seed}), FormulaSet()}, sig, opts.budget)) {
    std::cout << "seed is refutable\n";
    return kFailed;
  }
  std::vector<std::pair<Atom, Formula>> pairs;
  for (const auto& g : given) {
    auto colon = g.find(':');
    if (colon == std::string::npos) throw UsageError("--pair expects ATOM:FORMULA");
    pairs.emplace_back(Atom::named(g.substr(0, colon)), parse_formula_declaring(g.substr(colon + 1), sig));
  }
  if (given.empty()) pairs = sketch_pairs(sig, {Atom::named("a"), Atom::named("b")}, steps, cfg.seed);
  PointSketch sk = point_sketch(seed, pairs, sig, opts);
  std::cout << sk.transcript();
  if (cfg.machine) {
    std::cout << "FILTER " << pretty(sk.filter_generators, {}) << '\n';
    std::cout << "IDEAL " << pretty({}, sk.ideal_generators) << '\n';
  }
  std::cout << "DISJOINT " << (sk.disjoint ? "yes" : "no " + sk.first_overlap) << '\n';
  return sk.disjoint ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nominal first-order logic workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--sig", cfg.sig_path, "signature file");
  app.add_option("--model", cfg.model_path, "model file");
  app.add_option("--depth", cfg.depth, "prover depth bound")->check(CLI::NonNegativeNumber);
  app.add_option("--max-k", cfg.max_k, "largest countermodel domain")->check(CLI::NonNegativeNumber);
  app.add_option("--n", cfg.n, "cases per property")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--machine", cfg.machine, "line-oriented output");

  std::string text;
  std::size_t steps = 5;
  std::function<int()> run;
  auto sub = [&](const char* name, const char* help, const char* what, auto fn) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option(what, text)->required();
    c->callback([&run, fn, &cfg, &text] { run = [fn, &cfg, &text] { return fn(cfg, text); }; });
    return c;
  };
  sub("parse", "parse and print a formula or sequent", "text", cmd_parse);
  sub("eval", "evaluate a formula in the lift of a model", "formula", cmd_eval);
  sub("prove", "search for a proof of a sequent", "sequent", cmd_prove);
  sub("check", "check a proof file", "proof", cmd_check);
  sub("countermodel", "search for a finite countermodel", "sequent", cmd_countermodel);
  sub("axioms", "run a property suite", "suite", cmd_axioms);
  CLI::App* sk = app.add_subcommand("sketch", "first steps of the filter/ideal chain from a seed");
  sk->add_option("seed_formula", text)->required();
  std::vector<std::string> pairs;
  sk->add_option("--steps", steps, "number of generated pairs")->check(CLI::NonNegativeNumber);
  sk->add_option("--pair", pairs, "explicit pair ATOM:FORMULA, repeatable");
  sk->callback([&] { run = [&] { return cmd_sketch(cfg, text, steps, pairs); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return run();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    std::cerr << "too large: " << e.what() << '\n';
    return kUnknown;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
