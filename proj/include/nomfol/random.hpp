#pragma once

// Seeded generators for terms and formulas, used by samplers and tests.

#include <vector>

#include "suite.hpp"
#include "syntax.hpp"

namespace nomfol {

struct FormulaShape {
  std::size_t max_term_depth = 1;
  unsigned atomic_percent = 25;     // chance to stop early at an inner node
  unsigned quantifier_percent = 25;
  unsigned equation_percent = 20;   // among atomic formulas
  unsigned bottom_percent = 5;      // among atomic formulas
  bool sugar = true;                // also draw \/, -> and <->
};

inline Term random_term(const Signature& sig, const std::vector<Atom>& atoms, std::size_t depth, Rng& rng) {
  std::vector<Symbol> compound;
  for (const auto& f : sig.functions())
    if (f.arity > 0) compound.push_back(f);
  auto constants = sig.constants();
  if (depth > 0 && !compound.empty() && coin(rng, 50)) {
    const Symbol& f = compound[pick(rng, compound.size())];
    std::vector<Term> args;
    for (std::size_t i = 0; i < f.arity; ++i) args.push_back(random_term(sig, atoms, depth - 1, rng));
    return Term::app(f.name, std::move(args));
  }
  if (!constants.empty() && (atoms.empty() || coin(rng, 20)))
    return Term::app(constants[pick(rng, constants.size())].name, {});
  return var(atoms[pick(rng, atoms.size())]);
}

inline Formula random_atomic(const Signature& sig, const std::vector<Atom>& atoms, Rng& rng,
                             const FormulaShape& shape = {}) {
  if (coin(rng, shape.bottom_percent)) return Formula::bot();
  if (sig.predicates().empty() || coin(rng, shape.equation_percent)) {
    return Formula::eq(random_term(sig, atoms, shape.max_term_depth, rng),
                       random_term(sig, atoms, shape.max_term_depth, rng));
  }
  const Symbol& p = sig.predicates()[pick(rng, sig.predicates().size())];
  std::vector<Term> args;
  for (std::size_t i = 0; i < p.arity; ++i) args.push_back(random_term(sig, atoms, shape.max_term_depth, rng));
  return Formula::pred(p.name, std::move(args));
}

/// A formula of connective depth at most `depth`. Binders are drawn from
/// `atoms`, so shadowing and capture-prone shapes occur often.
inline Formula random_formula(const Signature& sig, const std::vector<Atom>& atoms, std::size_t depth, Rng& rng,
                              const FormulaShape& shape = {}) {
  if (depth == 0 || coin(rng, shape.atomic_percent)) return random_atomic(sig, atoms, rng, shape);
  if (coin(rng, shape.quantifier_percent))
    return Formula::all(atoms[pick(rng, atoms.size())], random_formula(sig, atoms, depth - 1, rng, shape));
  switch (pick(rng, shape.sugar ? 5 : 2)) {
    case 0:
      return Formula::conj(random_formula(sig, atoms, depth - 1, rng, shape),
                           random_formula(sig, atoms, depth - 1, rng, shape));
    case 1: return Formula::neg(random_formula(sig, atoms, depth - 1, rng, shape));
    case 2:
      return Formula::disj(random_formula(sig, atoms, depth - 1, rng, shape),
                           random_formula(sig, atoms, depth - 1, rng, shape));
    case 3:
      return Formula::imp(random_formula(sig, atoms, depth - 1, rng, shape),
                          random_formula(sig, atoms, depth - 1, rng, shape));
    default: {
      Formula x = random_formula(sig, atoms, depth - 1, rng, shape);
      Formula y = random_formula(sig, atoms, depth - 1, rng, shape);
      return Formula::iff(x, y);
    }
  }
}

/// A random permutation of `atoms`, built from a few swaps.
inline Perm random_perm(const std::vector<Atom>& atoms, Rng& rng) {
  Perm p;
  std::size_t swaps = pick(rng, 4);
  for (std::size_t i = 0; i < swaps; ++i)
    p = compose(swap(atoms[pick(rng, atoms.size())], atoms[pick(rng, atoms.size())]), p);
  return p;
}

}  // namespace nomfol
