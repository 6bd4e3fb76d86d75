#pragma once

// Corpora and harnesses shared by the unit tests and the acceptance binary.

#include <optional>
#include <string>
#include <vector>

#include "nomfol/nomfol.hpp"

namespace nomfol::harness {

/// Half forward-generated derivable sequents, half random ones.
inline std::vector<Sequent> mixed_corpus(std::size_t n, std::uint64_t seed, const Signature& sig) {
  GeneratorConfig cfg = default_generator_config();
  std::vector<Sequent> out;
  for (auto& d : generate_derivable(seed, n / 2, cfg)) out.push_back(d.sequent);
  Rng rng(seed + 1);
  FormulaShape shape;
  shape.sugar = false;
  shape.quantifier_percent = 15;
  while (out.size() < n) {
    Sequent s;
    for (std::size_t j = pick(rng, 3); j > 0; --j) s.left.insert(random_formula(sig, cfg.atoms, 2, rng, shape));
    for (std::size_t j = 1 + pick(rng, 2); j > 0; --j) s.right.insert(random_formula(sig, cfg.atoms, 2, rng, shape));
    out.push_back(s);
  }
  return out;
}

/// Empty when the sequent holds in the lift of `models` random models and at
/// every enumerated valuation of each; otherwise a description of the first
/// failure.
inline std::optional<std::string> soundness_failure(const Sequent& s, const Signature& sig, Rng& rng,
                                                    std::size_t models) {
  std::vector<Formula> left(s.left.begin(), s.left.end()), right(s.right.begin(), s.right.end());
  for (std::size_t m = 0; m < models; ++m) {
    std::size_t k = 1 + pick(rng, 3);
    OrdinaryModel N = random_model(sig, k, rng);
    if (!sequent_valid(left, right, lift_interpretation(N))) return "lift: " + s.show() + "\n" + print_model(N);
    for (const Valuation& v : enumerate_valuations(s.free_atoms(), k)) {
      bool all_left = true, some_right = false;
      for (const auto& f : left) all_left = all_left && standard_eval(f, N, v);
      for (const auto& f : right) some_right = some_right || standard_eval(f, N, v);
      if (all_left && !some_right) return "tarski: " + s.show() + " at " + v.show() + "\n" + print_model(N);
    }
  }
  return std::nullopt;
}

struct Settled {
  std::size_t proved = 0;
  std::size_t refuted = 0;
  std::size_t both = 0;
  std::string first_clash;
};

inline Settled settle(const std::vector<Sequent>& corpus, const Signature& sig, const ProverBudget& b,
                      std::size_t max_k, std::size_t max_models) {
  Settled out;
  for (const auto& s : corpus) {
    bool p = static_cast<bool>(prove(s, sig, b));
    bool r = static_cast<bool>(find_countermodel(s, sig, max_k, max_models));
    out.proved += p;
    out.refuted += r;
    if (p && r) {
      if (!out.both) out.first_clash = s.show();
      ++out.both;
    }
  }
  return out;
}

/// A random filter over the generator signature together with a universe
/// around it.
struct FilterCase {
  PredSet filter;
  std::vector<Formula> universe;
  Term u;
  Atom a;
};

inline FilterCase random_filter_case(std::uint64_t seed, const Signature& sig, const ProverBudget& b) {
  Rng rng(seed);
  GeneratorConfig cfg = default_generator_config();
  FormulaShape shape;
  shape.sugar = false;
  shape.quantifier_percent = 15;
  std::vector<Formula> gens;
  for (std::size_t j = 1 + pick(rng, 2); j > 0; --j) {
    Formula f = random_formula(sig, cfg.atoms, 1, rng, shape);
    if (f.kind() == FormulaKind::Bot) f = Formula::top();
    gens.push_back(f);
  }
  std::vector<Formula> universe = gens;
  while (universe.size() < 10) universe.push_back(random_formula(sig, cfg.atoms, 1 + pick(rng, 2), rng, shape));
  Term u = random_term(sig, cfg.atoms, 1, rng);
  Atom a = cfg.atoms[pick(rng, cfg.atoms.size())];
  return {filter_from(gens, sig, b), std::move(universe), u, a};
}

/// The formulas whose membership in p[u <- a] is settled: a proof of
/// membership, or a finite model against it.
inline std::vector<Formula> settled_universe(const PredSet& p, const std::vector<Formula>& universe, const Term& u,
                                             Atom a, const Signature& sig) {
  std::vector<Formula> out;
  for (const auto& f : universe) {
    Formula g = subst(f, a, u);
    if (p.member(g)) {
      out.push_back(f);
      continue;
    }
    Sequent s{FormulaSet(p.generators), FormulaSet{g}};
    if (find_countermodel(s, sig, 2, 5000)) out.push_back(f);
  }
  return out;
}

}  // namespace nomfol::harness
