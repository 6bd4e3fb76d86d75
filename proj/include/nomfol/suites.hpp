#pragma once

// Named property suites shared by the command-line tool and the tests.

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "foleq.hpp"
#include "sigma.hpp"
#include "tarski.hpp"

namespace nomfol {

inline Signature suite_signature() {
  Signature sig;
  sig.declare_function("f", 1);
  sig.declare_function("g", 2);
  sig.declare_function("e", 0);
  sig.declare_predicate("P", 1);
  sig.declare_predicate("R", 2);
  return sig;
}

inline std::vector<Atom> suite_atoms() {
  return {Atom::named("a"), Atom::named("b"), Atom::named("c"), Atom::named("d")};
}

namespace detail {

inline SuiteReport renamed(SuiteReport r, const std::string& prefix) {
  for (auto& x : r.results) x.name = prefix + x.name;
  return r;
}

inline SigmaSampler<TarskiTerms> tarski_term_sampler(std::size_t k) {
  auto atoms = suite_atoms();
  return {[k, atoms](Rng& r) { return random_table_fun(k, static_cast<Value>(k), atoms, 3, r); },
          [k, atoms](Rng& r) { return random_table_fun(k, static_cast<Value>(k), atoms, 2, r); }, atoms};
}

inline FoleqSampler<TarskiLift> tarski_lift_sampler(std::size_t k) {
  auto atoms = suite_atoms();
  return {[k, atoms](Rng& r) { return random_table_fun(k, 2, atoms, 3, r); },
          [k, atoms](Rng& r) { return random_table_fun(k, static_cast<Value>(k), atoms, 2, r); }, atoms};
}

}  // namespace detail

/// Substitution axioms on first-order terms and on formulas up to alpha.
inline SuiteReport sigma_terms_suite(const SuiteOptions& opts) {
  Signature sig = suite_signature();
  std::vector<Atom> atoms = suite_atoms();
  atoms.push_back(Atom(0));
  SigmaSampler<TermAlgebra> ts{[sig, atoms](Rng& r) { return random_term(sig, atoms, 2, r); },
                               [sig, atoms](Rng& r) { return random_term(sig, atoms, 2, r); }, atoms};
  SuiteReport report = sigma_axiom_suite(TermAlgebra{}, ts, opts, "sigma");
  SigmaSampler<FormulaAlgebra> fs{[sig, atoms](Rng& r) { return random_formula(sig, atoms, 3, r); },
                                  [sig, atoms](Rng& r) { return random_term(sig, atoms, 1, r); }, atoms};
  report.append(sigma_axiom_suite(FormulaAlgebra{}, fs, opts, "sigma-formula"));
  return report;
}

/// Substitution axioms on the term and truth sides of the finite lift.
inline SuiteReport sigma_tarski_suite(const SuiteOptions& opts, const std::vector<std::size_t>& ks = {2, 3}) {
  SuiteReport report;
  for (std::size_t k : ks) {
    TarskiLift L(k);
    std::string tag = "k" + std::to_string(k);
    report.append(sigma_axiom_suite(L.terms(), detail::tarski_term_sampler(k), opts, "sigma-terms-" + tag));
    auto s = detail::tarski_lift_sampler(k);
    SigmaSampler<TarskiLift> ls{s.element, s.termlike, s.atoms};
    report.append(sigma_axiom_suite(L, ls, opts, "sigma-lift-" + tag));
  }
  return report;
}

/// amgis-sigma on sets of terms, compared on `probes` probe terms.
inline SuiteReport amgis_pow_suite(const SuiteOptions& opts, std::size_t probes = 100) {
  Signature sig = suite_signature();
  std::vector<Atom> atoms = suite_atoms();
  PowAmgis<TermAlgebra> P(TermAlgebra{}, default_term_probes(sig, probes));
  AmgisSampler<PowAmgis<TermAlgebra>> s{[sig, atoms](Rng& r) { return random_term_set(sig, atoms, r); },
                                        [sig, atoms](Rng& r) { return random_term(sig, atoms, 1, r); }, atoms};
  return amgis_axiom_suite(P, s, opts);
}

inline SuiteReport foleq_tarski_suite(const SuiteOptions& opts, const std::vector<std::size_t>& ks = {1, 2, 3}) {
  SuiteReport report;
  for (std::size_t k : ks)
    report.append(detail::renamed(foleq_axiom_suite(TarskiLift(k), detail::tarski_lift_sampler(k), opts),
                                  "foleq-k" + std::to_string(k) + "-"));
  return report;
}

/// For finite/cofinite atom sets X, Y over four named atoms and an atom a
/// fresh for both: X = Y iff their parts fresh for a agree. Exhaustive, so
/// `n` and `seed` are ignored.
inline SuiteReport precedent_suite() {
  std::vector<Atom> universe{Atom::named("a"), Atom::named("b"), Atom::named("c"), Atom::named("d")};
  std::vector<FinCofinSet> sets;
  for (unsigned mask = 0; mask < 16; ++mask) {
    AtomSet s;
    for (unsigned i = 0; i < 4; ++i)
      if (mask & (1u << i)) s.insert(universe[i]);
    sets.push_back(FinCofinSet::finite(s));
    sets.push_back(FinCofinSet::cofinite(s));
  }
  std::vector<Atom> witnesses = universe;
  witnesses.push_back(fresh(AtomSet(universe.begin(), universe.end())));

  AxiomResult r;
  r.name = "precedent";
  for (const auto& X : sets)
    for (const auto& Y : sets)
      for (Atom a : witnesses) {
        if (support(X).count(a) || support(Y).count(a)) {
          ++r.skipped;
          continue;
        }
        bool lhs = X == Y;
        bool rhs = X.fresh_part(a) == Y.fresh_part(a);
        if (lhs == rhs) {
          ++r.passed;
        } else {
          if (!r.failed) r.counterexample = show(support(X)) + " vs " + show(support(Y)) + " at " + a.name();
          ++r.failed;
        }
      }
  return {{r}};
}

/// The two equality laws on the finite lift, and the one-witness equality
/// membership test on sets of terms checked against five further witnesses.
inline SuiteReport eq_laws_suite(const SuiteOptions& opts) {
  SuiteReport report;
  for (std::size_t k : {1, 2, 3}) {
    SuiteReport all = foleq_axiom_suite(TarskiLift(k), detail::tarski_lift_sampler(k), opts);
    for (const auto& r : all.results)
      if (r.name.rfind("eq-", 0) == 0) {
        AxiomResult x = r;
        x.name = "eq-k" + std::to_string(k) + "-" + r.name.substr(3);
        report.results.push_back(x);
      }
  }
  Signature sig = suite_signature();
  std::vector<Atom> atoms = suite_atoms();
  PowAmgis<TermAlgebra> P(TermAlgebra{}, default_term_probes(sig, 60));
  report.results.push_back(run_cases("eq-strong", opts, [&](Rng& r) {
    CharSet<Term> p = random_term_set(sig, atoms, r);
    Term u = random_term(sig, atoms, 1, r), v = random_term(sig, atoms, 1, r);
    bool one = eq_element_member(P, p, u, v);
    bool many = eq_element_member_all(P, p, u, v, 5);
    return CaseOutcome::check(one == many, [&] { return p.label + " at " + pretty(u) + ", " + pretty(v); });
  }));
  return report;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"sigma-terms",  "sigma-tarski", "amgis-pow",
                                              "foleq-tarski", "precedent",    "eq-laws"};
  return names;
}

inline SuiteReport run_named_suite(const std::string& name, const SuiteOptions& opts) {
  if (name == "sigma-terms") return sigma_terms_suite(opts);
  if (name == "sigma-tarski") return sigma_tarski_suite(opts);
  if (name == "amgis-pow") return amgis_pow_suite(opts);
  if (name == "foleq-tarski") return foleq_tarski_suite(opts);
  if (name == "precedent") return precedent_suite();
  if (name == "eq-laws") return eq_laws_suite(opts);
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace nomfol
