// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "nomfol/nomfol.hpp"
#include "support.hpp"

using namespace nomfol;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << "  " << title << "  " << detail << std::endl;
  failures += !ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

unsigned jobs() { return std::max(1u, std::min(4u, std::thread::hardware_concurrency())); }

std::size_t total_failed(const SuiteReport& r) {
  std::size_t n = 0;
  for (const auto& x : r.results) n += x.failed;
  return n;
}

bool all_counted(const SuiteReport& r, std::size_t n) {
  for (const auto& x : r.results)
    if (x.passed + x.failed + x.skipped != n || !x.exercised()) return false;
  return true;
}

std::string first_failure(const SuiteReport& r) {
  for (const auto& x : r.results)
    if (x.failed) return x.name + ": " + x.counterexample;
  return "";
}

ProverBudget depth(std::size_t d) {
  ProverBudget b;
  b.max_depth = d;
  return b;
}

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport r = sigma_terms_suite({1000, 1, jobs()});
  r.append(sigma_tarski_suite({1000, 1, jobs()}, {2, 3}));
  double s = seconds_since(t0);
  bool ok = r.ok() && all_counted(r, 1000) && s < 30.0;
  report(1, "sigma axioms on terms, formulas and the k=2,3 lift", ok,
         std::to_string(r.results.size()) + " axioms x 1000, " + std::to_string(total_failed(r)) + " failures, " +
             fmt(s) + " (limit 30s) " + first_failure(r));
}

void criterion2() {
  SuiteReport r = amgis_pow_suite({500, 1, jobs()}, 100);
  bool ok = r.ok() && all_counted(r, 500);
  report(2, "amgis-sigma on sets of terms", ok,
         "500 cases x 100 probes, " + std::to_string(total_failed(r)) + " failures " + first_failure(r));
}

void criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport r = foleq_tarski_suite({500, 1, jobs()}, {1, 2, 3});
  double s = seconds_since(t0);
  bool ok = r.ok() && all_counted(r, 500) && s < 60.0;
  report(3, "FOLeq laws on the lift, k=1,2,3", ok,
         std::to_string(r.results.size()) + " laws x 500, " + std::to_string(total_failed(r)) + " failures, " +
             fmt(s) + " (limit 60s) " + first_failure(r));
}

void criterion4() {
  GeneratorConfig cfg = default_generator_config();
  auto ds = generate_derivable(4, 200, cfg);
  Rng rng(44);
  std::size_t bad = 0;
  std::string first;
  for (const auto& d : ds)
    if (auto f = harness::soundness_failure(d.sequent, cfg.sig, rng, 20)) {
      if (!bad) first = *f;
      ++bad;
    }
  report(4, "derivable sequents hold in lifts and at every valuation", bad == 0 && ds.size() == 200,
         std::to_string(ds.size()) + " derivations x 20 models, " + std::to_string(bad) + " failures " + first);
}

void criterion5() {
  Signature sig = suite_signature();
  std::vector<Atom> atoms{Atom::named("a"), Atom::named("b"), Atom::named("c")};
  Rng rng(5);
  std::size_t bad = 0;
  for (int i = 0; i < 300; ++i) {
    std::size_t k = 1 + pick(rng, 3);
    OrdinaryModel N = random_model(sig, k, rng);
    Formula phi = random_formula(sig, atoms, 1 + pick(rng, 4), rng);
    bad += !agreement_check(phi, N);
  }
  report(5, "lifted semantics agrees with Tarski semantics", bad == 0,
         "300 formulas, depth<=4, <=3 free atoms, k<=3, " + std::to_string(bad) + " mismatches");
}

void criterion6() {
  Signature sig = suite_signature();
  std::vector<Atom> atoms{Atom::named("a"), Atom::named("b"), Atom::named("c")};
  Rng rng(6);
  std::size_t bad = 0;
  for (int i = 0; i < 300; ++i) {
    auto I = lift_interpretation(random_model(sig, 1 + pick(rng, 3), rng));
    Formula phi = random_formula(sig, atoms, 3, rng);
    Term r = random_term(sig, atoms, 2, rng);
    Atom a = atoms[pick(rng, atoms.size())];
    bad += !(interpret(subst(phi, a, r), I) == I.algebra.subst(interpret(phi, I), a, interpret_term(r, I)));
  }
  report(6, "interpretation commutes with substitution", bad == 0, "300 cases, " + std::to_string(bad) + " mismatches");
}

void criterion7() {
  Rng rng(7);
  std::vector<Atom> atoms = suite_atoms();
  std::size_t bad = 0;
  for (int i = 0; i < 200; ++i) {
    std::size_t k = 1 + pick(rng, 3);
    TarskiLift L(k);
    TableFun f = random_table_fun(k, 2, atoms, 3, rng);
    Atom a = atoms[pick(rng, atoms.size())];
    TableFun meet = L.top();
    for (Value v = 0; v < k; ++v) meet = L.meet(meet, L.subst(f, a, TableFun::constant(k, v)));
    bad += !(L.freshmeet(a, f) == meet);
  }
  report(7, "fresh meet equals the meet over constant instances", bad == 0,
         "200 cases, k<=3, " + std::to_string(bad) + " mismatches");
}

void criterion8() {
  GeneratorConfig cfg = default_generator_config();
  auto corpus = harness::mixed_corpus(500, 8, cfg.sig);
  auto s = harness::settle(corpus, cfg.sig, depth(4), 2, 5000);
  bool ok = s.both == 0 && s.proved >= 50 && s.refuted >= 50;
  report(8, "prover and countermodel search never both succeed", ok,
         "500 sequents: " + std::to_string(s.proved) + " proved, " + std::to_string(s.refuted) + " refuted, " +
             std::to_string(s.both) + " both (need >=50 each way) " + s.first_clash);
}

void criterion9() {
  Signature sig = suite_signature();
  std::vector<Atom> atoms = suite_atoms();
  Rng rng(9);
  std::size_t bad = 0, checks = 0;
  for (int i = 0; i < 1000; ++i) {
    auto agree = [&](const AtomSet& supp, auto unchanged) {
      for (Atom a : atoms) {
        Atom b = fresh(set_union(supp, {a}));
        ++checks;
        bad += (supp.count(a) == 0) != unchanged(a, b);
      }
    };
    switch (i % 3) {
      case 0: {
        std::size_t k = 1 + pick(rng, 3);
        TableFun f = random_table_fun(k, static_cast<Value>(k), atoms, 3, rng);
        agree(support(f), [&](Atom a, Atom b) { return act(swap(b, a), f) == f; });
        break;
      }
      case 1: {
        Term t = random_term(sig, atoms, 3, rng);
        agree(support(t), [&](Atom a, Atom b) { return act(swap(b, a), t) == t; });
        break;
      }
      default: {
        Formula phi = random_formula(sig, atoms, 3, rng);
        agree(support(phi), [&](Atom a, Atom b) { return alpha_eq(act(swap(b, a), phi), phi); });
      }
    }
  }
  report(9, "swap-with-fresh test matches computed support", bad == 0,
         "1000 elements (tables, terms, formulas), " + std::to_string(checks) + " atom checks, " +
             std::to_string(bad) + " disagreements");
}

void criterion10() {
  GeneratorConfig cfg = default_generator_config();
  ProverBudget b = depth(3);

  std::size_t iff_bad = 0;
  Rng rng(10);
  for (std::uint64_t i = 0; i < 500; ++i) {
    auto fc = harness::random_filter_case(i, cfg.sig, b);
    Formula phi = fc.universe[pick(rng, fc.universe.size())];
    iff_bad += points_amgis(fc.filter, fc.u, fc.a).member(phi) != fc.filter.member(subst(phi, fc.a, fc.u));
  }

  std::size_t sampled = 0, bus_bad = 0;
  std::string bus_first;
  for (std::uint64_t i = 1000; sampled < 50 && i < 1400; ++i) {
    auto fc = harness::random_filter_case(i, cfg.sig, b);
    if (!filter_check(fc.filter, fc.universe, cfg.sig, b).ok()) continue;
    ++sampled;
    auto restricted = harness::settled_universe(fc.filter, fc.universe, fc.u, fc.a, cfg.sig);
    FilterReport r = filter_check(points_amgis(fc.filter, fc.u, fc.a), restricted, cfg.sig, b);
    if (!r.ok()) {
      if (!bus_bad) bus_first = r.to_text();
      ++bus_bad;
    }
  }

  std::size_t overlaps = 0;
  bool stable = true;
  Signature sig = cfg.sig;
  Formula seed = parse_formula("P(c())", sig);
  for (std::uint64_t run = 1; run <= 10; ++run) {
    auto pairs = sketch_pairs(sig, cfg.atoms, 6, run);
    PointSketch x = point_sketch(seed, pairs, sig);
    PointSketch y = point_sketch(seed, pairs, sig);
    overlaps += !x.disjoint;
    stable = stable && x.transcript() == y.transcript();
  }
  PointSketch one = point_sketch(seed, {{Atom::named("a"), parse_formula("P(a)", sig)}}, sig);
  stable = stable && one.transcript() == "STEP 1 PAIR (a, P(a)) SIDE filter\n";

  bool ok = iff_bad == 0 && sampled == 50 && bus_bad == 0 && overlaps == 0 && stable;
  std::ostringstream d;
  d << "sigma.iff 500 samples " << iff_bad << " failures; preservation " << sampled << " universes " << bus_bad
    << " failures; sketch 10 runs " << overlaps << " overlaps; transcripts " << (stable ? "stable" : "UNSTABLE")
    << (bus_first.empty() ? "" : "\n" + bus_first);
  report(10, "filter machinery", ok, d.str());
}

void criterion11() {
  SuiteReport r = precedent_suite();
  const AxiomResult& x = r.results.at(0);
  report(11, "precedent lemma by exhaustive enumeration", r.ok() && x.passed > 0,
         "32 atom sets over 4 atoms plus one fresh atom, " + std::to_string(x.passed) + " pairs checked, " +
             std::to_string(x.failed) + " failures");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  std::cout << (failures ? "ACCEPTANCE FAIL " + std::to_string(failures) + " criteria" : std::string("ACCEPTANCE PASS"))
            << std::endl;
  return failures ? 1 : 0;
}
