#pragma once

// Filters, ideals and points at bounded scale: membership is decided by the
// bounded prover, so every answer is relative to a ProverBudget.

#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "prover.hpp"

namespace nomfol {

/// A set of formulas given by an alpha-invariant membership oracle.
/// `generators` is the finite front the set was built from (filter side:
/// their conjunction; ideal side: their disjunction), when there is one.
struct PredSet {
  std::function<bool(const Formula&)> member;
  std::string provenance;
  std::vector<Formula> generators;
  AtomSet support;

  bool contains(const Formula& f) const { return member(f); }
};

namespace detail {

/// Caches answers by alpha-class. Not thread-safe; one PredSet per thread.
inline std::function<bool(const Formula&)> memoised(std::function<bool(const Formula&)> f) {
  auto cache = std::make_shared<std::map<std::string, bool>>();
  return [f = std::move(f), cache](const Formula& phi) {
    std::string key = alpha_key(phi);
    if (auto it = cache->find(key); it != cache->end()) return it->second;
    bool v = f(phi);
    cache->emplace(std::move(key), v);
    return v;
  };
}

inline bool proves(const std::vector<Formula>& left, const std::vector<Formula>& right, const Signature& sig,
                   const ProverBudget& b) {
  return prove({FormulaSet(left), FormulaSet(right)}, sig, b).proof.has_value();
}

}  // namespace detail

/// Formulas provably entailed by the generators together.
inline PredSet filter_from(std::vector<Formula> generators, const Signature& sig, const ProverBudget& b,
                           std::string provenance = "upset") {
  AtomSet supp = strict_support(generators);
  auto member = [generators, sig, b](const Formula& xi) { return detail::proves(generators, {xi}, sig, b); };
  return {detail::memoised(member), std::move(provenance), std::move(generators), std::move(supp)};
}

/// Formulas that provably entail the disjunction of the generators.
inline PredSet ideal_from(std::vector<Formula> generators, const Signature& sig, const ProverBudget& b,
                          std::string provenance = "downset") {
  AtomSet supp = strict_support(generators);
  auto member = [generators, sig, b](const Formula& xi) { return detail::proves({xi}, generators, sig, b); };
  return {detail::memoised(member), std::move(provenance), std::move(generators), std::move(supp)};
}

inline PredSet upset(const Formula& phi, const Signature& sig, const ProverBudget& b) {
  return filter_from({phi}, sig, b, "upset");
}

inline PredSet downset(const Formula& phi, const Signature& sig, const ProverBudget& b) {
  return ideal_from({phi}, sig, b, "downset");
}

/// p + psi: entailed by (the generators of p) and psi. Contains p and psi by
/// construction.
inline PredSet grow_filter(const PredSet& p, const Formula& psi, const Signature& sig, const ProverBudget& b) {
  std::vector<Formula> gens = p.generators;
  gens.push_back(psi);
  PredSet grown = filter_from(gens, sig, b, "grown");
  auto member = [base = p.member, more = grown.member](const Formula& xi) { return base(xi) || more(xi); };
  return {member, "grown", std::move(gens), grown.support};
}

/// Z + Y: formulas entailing the disjunction of Z's generators with at most
/// `width` formulas of Y (the first `width`; larger subsets subsume smaller
/// ones). Contains Z and those members of Y by construction.
inline PredSet grow_ideal(const PredSet& Z, const std::vector<Formula>& Y, const Signature& sig,
                          const ProverBudget& b, std::size_t width = 3) {
  std::vector<Formula> gens = Z.generators;
  for (std::size_t i = 0; i < Y.size() && i < width; ++i) gens.push_back(Y[i]);
  PredSet grown = ideal_from(gens, sig, b, "grown");
  auto member = [base = Z.member, more = grown.member](const Formula& xi) { return base(xi) || more(xi); };
  return {member, "grown", std::move(gens), grown.support};
}

/// phi is in p[u <- a] iff phi[a := u] is in p.
inline PredSet points_amgis(const PredSet& p, const Term& u, Atom a) {
  AtomSet supp = set_union(p.support, u.atoms());
  supp.insert(a);
  auto member = [base = p.member, u, a](const Formula& phi) { return base(subst(phi, a, u)); };
  return {member, "amgis-image", {}, std::move(supp)};
}

// ---------------------------------------------------------------------------
// Checks.

struct Violation {
  int condition = 0;
  std::string detail;
};

struct FilterReport {
  std::vector<Violation> violations;
  std::size_t universe_size = 0;
  std::size_t budget_depth = 0;

  bool ok() const { return violations.empty(); }
  bool has(int condition) const {
    for (const auto& v : violations)
      if (v.condition == condition) return true;
    return false;
  }
  std::string to_text() const {
    std::ostringstream out;
    out << "UNIVERSE " << universe_size << " DEPTH " << budget_depth << '\n';
    for (const auto& v : violations) out << "VIOLATION " << v.condition << ' ' << v.detail << '\n';
    out << (ok() ? "FILTER ok\n" : "FILTER violated\n");
    return out.str();
  }
};

/// The filter conditions restricted to `universe`: (1) consistency, (2)
/// closure under entailments the prover finds, (3) closure under ∧, and (4)
/// the new-quantified rule, sampled at three fresh atoms.
inline FilterReport filter_check(const PredSet& p, const std::vector<Formula>& universe, const Signature& sig,
                                 const ProverBudget& b) {
  FilterReport report;
  report.universe_size = universe.size();
  report.budget_depth = b.max_depth;
  auto add = [&](int c, std::string why) { report.violations.push_back({c, std::move(why)}); };

  if (p.member(Formula::bot())) add(1, "bottom is a member");
  std::vector<Formula> members;
  for (const auto& f : universe)
    if (p.member(f)) members.push_back(f);

  for (std::size_t i = 0; i < members.size(); ++i) {
    if (detail::proves({members[i]}, {}, sig, b)) add(1, pretty(members[i]) + " is refutable");
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (detail::proves({members[i], members[j]}, {}, sig, b))
        add(1, pretty(members[i]) + " and " + pretty(members[j]) + " are jointly refutable");
  }
  for (const auto& f : members)
    for (const auto& g : universe)
      if (!p.member(g) && detail::proves({f}, {g}, sig, b)) add(2, pretty(f) + " |- " + pretty(g) + " but not a member");
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i; j < members.size(); ++j) {
      Formula both = Formula::conj(members[i], members[j]);
      if (!p.member(both)) add(3, pretty(both) + " missing");
    }
  for (const auto& f : universe) {
    std::vector<std::pair<Atom, Formula>> cases;
    for (Atom a : f.free_atoms()) cases.emplace_back(a, f);
    if (f.kind() == FormulaKind::All) cases.emplace_back(f.binder(), f.body());
    for (const auto& [a, body] : cases) {
      AtomSet avoid = set_union(p.support, all_atoms(body));
      avoid.insert(a);
      std::size_t hits = 0;
      for (Atom c : fresh_n(avoid, 3)) hits += p.member(act(swap(c, a), body));
      if (hits == 3 && !p.member(Formula::all(a, body)))
        add(4, "fresh renamings of " + pretty(body) + " are members but not forall " + a.name());
      else if (hits != 0 && hits != 3)
        add(4, "fresh renamings of " + pretty(body) + " at " + a.name() + " disagree");
    }
  }
  return report;
}

struct ForallReport {
  bool premise = false;  // forall a. phi is a member
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// If forall a. phi is in p, each candidate instance and the instances at
/// three fresh atoms must be in p.
inline ForallReport forall_membership_check(const PredSet& p, Atom a, const Formula& phi,
                                            const std::vector<Term>& candidates) {
  ForallReport r;
  r.premise = p.member(Formula::all(a, phi));
  if (!r.premise) return r;
  std::vector<Term> all = candidates;
  AtomSet avoid = set_union(p.support, all_atoms(phi));
  avoid.insert(a);
  for (Atom n : fresh_n(avoid, 3)) all.push_back(var(n));
  for (const auto& u : all) {
    Formula inst = subst(phi, a, u);
    if (!p.member(inst)) r.violations.push_back(pretty(inst) + " not a member");
  }
  return r;
}

struct PrimeReport {
  std::vector<std::string> prime_failures;  // phi1 \/ phi2 in p, neither disjunct
  std::vector<std::string> ultra_failures;  // not exactly one of phi, ~phi
  bool prime() const { return prime_failures.empty(); }
  bool ultra() const { return ultra_failures.empty(); }
  bool agree() const { return prime() == ultra(); }
};

inline PrimeReport prime_check(const PredSet& p, const std::vector<std::pair<Formula, Formula>>& samples) {
  PrimeReport r;
  for (const auto& [x, y] : samples) {
    if (p.member(Formula::disj(x, y)) && !p.member(x) && !p.member(y))
      r.prime_failures.push_back(pretty(Formula::disj(x, y)));
    for (const auto& f : {x, y}) {
      bool in = p.member(f), out = p.member(Formula::neg(f));
      if (in == out) r.ultra_failures.push_back(pretty(f));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// The point sketch: the first steps of the filter/ideal chain.

enum class Side { Filter, Ideal, Undecided };

inline const char* side_name(Side s) {
  switch (s) {
    case Side::Filter: return "filter";
    case Side::Ideal: return "ideal";
    case Side::Undecided: return "undecided";
  }
  return "?";
}

struct SketchStep {
  Atom atom;
  Formula formula;
  Side side = Side::Undecided;
};

struct PointSketch {
  std::vector<SketchStep> steps;
  std::vector<Formula> filter_generators;
  std::vector<Formula> ideal_generators;
  std::vector<Formula> queried;
  bool disjoint = true;
  std::string first_overlap;

  std::string transcript() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < steps.size(); ++i)
      out << "STEP " << i + 1 << " PAIR (" << steps[i].atom.name() << ", " << pretty(steps[i].formula) << ") SIDE "
          << side_name(steps[i].side) << '\n';
    return out.str();
  }
};

struct SketchOptions {
  ProverBudget budget{3, {}, 24, 20000};
  std::size_t max_k = 2;
  std::size_t max_models = 5000;
  std::size_t fresh_samples = 3;
};

/// Starts from (upset(seed), downset(bottom)). At each pair (a, phi) the
/// filter is tentatively grown by forall a. phi. A proved clash with the
/// ideal sends the step to the ideal side, which grows by (b a).phi at
/// fresh b; a finite countermodel to the clash sends it to the filter side;
/// otherwise the step is undecided and nothing grows. Disjointness is
/// re-checked on every queried formula after every step.
inline PointSketch point_sketch(const Formula& seed, const std::vector<std::pair<Atom, Formula>>& pairs,
                                const Signature& sig, const SketchOptions& opts = {}) {
  PointSketch sk;
  sk.filter_generators = {seed};
  sk.ideal_generators = {Formula::bot()};
  sk.queried = {seed, Formula::bot()};
  auto check_disjoint = [&] {
    PredSet p = filter_from(sk.filter_generators, sig, opts.budget);
    PredSet z = ideal_from(sk.ideal_generators, sig, opts.budget);
    for (const auto& f : sk.queried)
      if (p.member(f) && z.member(f)) {
        if (sk.disjoint) sk.first_overlap = pretty(f);
        sk.disjoint = false;
      }
  };
  check_disjoint();
  for (const auto& [a, phi] : pairs) {
    Formula candidate = Formula::all(a, phi);
    sk.queried.push_back(candidate);
    std::vector<Formula> left = sk.filter_generators;
    left.push_back(candidate);
    Sequent clash{FormulaSet(left), FormulaSet(sk.ideal_generators)};
    SketchStep step{a, phi, Side::Undecided};
    if (prove(clash, sig, opts.budget)) {
      step.side = Side::Ideal;
      AtomSet avoid = set_union(strict_support(sk.filter_generators), all_atoms(phi));
      avoid.insert(a);
      for (Atom b : fresh_n(avoid, opts.fresh_samples)) {
        Formula y = act(swap(b, a), phi);
        bool seen = std::ranges::any_of(sk.ideal_generators,
                                        [&](const Formula& g) { return alpha_key(g) == alpha_key(y); });
        if (seen) continue;
        sk.ideal_generators.push_back(y);
        sk.queried.push_back(y);
      }
    } else if (find_countermodel(clash, sig, opts.max_k, opts.max_models)) {
      step.side = Side::Filter;
      sk.filter_generators.push_back(candidate);
    }
    sk.steps.push_back(step);
    check_disjoint();
  }
  return sk;
}

/// A deterministic list of (atom, formula) pairs over the signature.
inline std::vector<std::pair<Atom, Formula>> sketch_pairs(const Signature& sig, const std::vector<Atom>& atoms,
                                                          std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  FormulaShape shape;
  shape.sugar = false;
  shape.quantifier_percent = 10;
  std::vector<std::pair<Atom, Formula>> out;
  for (std::size_t i = 0; i < n; ++i) {
    Atom a = atoms[pick(rng, atoms.size())];
    out.emplace_back(a, random_formula(sig, atoms, 2, rng, shape));
  }
  return out;
}

}  // namespace nomfol
