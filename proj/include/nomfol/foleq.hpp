#pragma once

// FOLeq algebras: fresh-finite limits, complement, equality and a compatible
// substitution action; the interpretation of formulas into them.

#include <concepts>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sigma.hpp"
#include "syntax.hpp"

namespace nomfol {

/// ∨, ⊥ and ≤ are derived from ∧ and ¬ below, never supplied by instances.
template <class A>
concept FoleqAlgebra = SigmaAlgebra<A> &&
    requires(const A& alg, const typename A::element& x, const typename A::termlike& u, Atom a) {
      { alg.top() } -> std::same_as<typename A::element>;
      { alg.meet(x, x) } -> std::same_as<typename A::element>;
      { alg.neg(x) } -> std::same_as<typename A::element>;
      { alg.freshmeet(a, x) } -> std::same_as<typename A::element>;
      { alg.eq(u, u) } -> std::same_as<typename A::element>;
    };

template <FoleqAlgebra A>
typename A::element bot(const A& alg) {
  return alg.neg(alg.top());
}

template <FoleqAlgebra A>
typename A::element join(const A& alg, const typename A::element& x, const typename A::element& y) {
  return alg.neg(alg.meet(alg.neg(x), alg.neg(y)));
}

template <FoleqAlgebra A>
bool leq(const A& alg, const typename A::element& x, const typename A::element& y) {
  return alg.equal(alg.meet(x, y), x);
}

/// Symbol interpretations at distinct atoms. Both maps should be
/// equivariant in the atom tuple.
template <FoleqAlgebra A>
struct Interpretation {
  using element = typename A::element;
  using termlike = typename A::termlike;

  A algebra;
  std::function<termlike(const std::string&, const std::vector<Atom>&)> fun;
  std::function<element(const std::string&, const std::vector<Atom>&)> pred;
};

namespace detail {

/// Evaluates a symbol at fresh distinct atoms, then substitutes the argument
/// values for those atoms simultaneously.
template <SigmaAlgebra X, class Make>
typename X::element apply_symbol(const X& alg, const std::vector<typename X::termlike>& args, Make&& make) {
  AtomSet avoid;
  for (const auto& u : args) {
    AtomSet s = alg.terms().support(u);
    avoid.insert(s.begin(), s.end());
  }
  std::vector<Atom> atoms = fresh_n(avoid, args.size());
  std::vector<std::pair<Atom, typename X::termlike>> pairs;
  for (std::size_t i = 0; i < args.size(); ++i) pairs.emplace_back(atoms[i], args[i]);
  return sim_subst(alg, make(atoms), pairs);
}

}  // namespace detail

template <FoleqAlgebra A>
typename A::termlike interpret_term(const Term& t, const Interpretation<A>& I) {
  const auto& U = I.algebra.terms();
  if (t.is_var()) return U.atm(t.atom());
  std::vector<typename A::termlike> args;
  for (const auto& s : t.args()) args.push_back(interpret_term(s, I));
  return detail::apply_symbol(U, args, [&](const std::vector<Atom>& atoms) { return I.fun(t.symbol(), atoms); });
}

template <FoleqAlgebra A>
typename A::element interpret(const Formula& phi, const Interpretation<A>& I) {
  const A& alg = I.algebra;
  switch (phi.kind()) {
    case FormulaKind::Bot: return bot(alg);
    case FormulaKind::Eq: return alg.eq(interpret_term(phi.terms()[0], I), interpret_term(phi.terms()[1], I));
    case FormulaKind::Pred: {
      std::vector<typename A::termlike> args;
      for (const auto& s : phi.terms()) args.push_back(interpret_term(s, I));
      return detail::apply_symbol(alg, args, [&](const std::vector<Atom>& atoms) { return I.pred(phi.symbol(), atoms); });
    }
    case FormulaKind::And: return alg.meet(interpret(phi.left(), I), interpret(phi.right(), I));
    case FormulaKind::Neg: return alg.neg(interpret(phi.body(), I));
    case FormulaKind::All: return alg.freshmeet(phi.binder(), interpret(phi.body(), I));
  }
  throw std::logic_error("unreachable formula kind");
}

/// ⋀Φ ≤ ⋁Ψ, with the empty meet ⊤ and the empty join ⊥.
template <FoleqAlgebra A>
bool sequent_valid(const std::vector<Formula>& left, const std::vector<Formula>& right, const Interpretation<A>& I) {
  const A& alg = I.algebra;
  auto lhs = alg.top();
  for (const auto& phi : left) lhs = alg.meet(lhs, interpret(phi, I));
  auto rhs = bot(alg);
  for (const auto& psi : right) rhs = join(alg, rhs, interpret(psi, I));
  return leq(alg, lhs, rhs);
}

/// Checks that the symbol maps commute with renaming of their atom tuples.
template <FoleqAlgebra A>
bool interpretation_equivariant(const Interpretation<A>& I, const Signature& sig, const Perm& pi,
                                const std::vector<Atom>& pool) {
  const A& alg = I.algebra;
  const auto& U = alg.terms();
  for (const auto& f : sig.functions()) {
    if (f.arity > pool.size()) continue;
    std::vector<Atom> atoms(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(f.arity));
    std::vector<Atom> moved;
    for (Atom a : atoms) moved.push_back(pi(a));
    if (!U.equal(U.act(pi, I.fun(f.name, atoms)), I.fun(f.name, moved))) return false;
  }
  for (const auto& p : sig.predicates()) {
    if (p.arity > pool.size()) continue;
    std::vector<Atom> atoms(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(p.arity));
    std::vector<Atom> moved;
    for (Atom a : atoms) moved.push_back(pi(a));
    if (!alg.equal(alg.act(pi, I.pred(p.name, atoms)), I.pred(p.name, moved))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Axiom suite.

template <class A>
struct FoleqSampler {
  std::function<typename A::element(Rng&)> element;
  std::function<typename A::termlike(Rng&)> termlike;
  std::vector<Atom> atoms;
};

/// Lattice, distributivity, complement, fresh-finite limit, substitution
/// compatibility and equality laws, each on `opts.n` random instances.
template <FoleqAlgebra A>
SuiteReport foleq_axiom_suite(const A& alg, const FoleqSampler<A>& s, const SuiteOptions& opts) {
  using E = typename A::element;
  const auto& U = alg.terms();
  SuiteReport report;
  auto law = [&](const std::string& name, auto&& body) { report.results.push_back(run_cases(name, opts, body)); };
  auto same = [&](const E& lhs, const E& rhs) {
    return CaseOutcome::check(alg.equal(lhs, rhs), [&] { return alg.show(lhs) + " != " + alg.show(rhs); });
  };
  auto below = [&](const E& lhs, const E& rhs) {
    return CaseOutcome::check(leq(alg, lhs, rhs), [&] { return alg.show(lhs) + " !<= " + alg.show(rhs); });
  };
  auto J = [&](const E& x, const E& y) { return join(alg, x, y); };
  auto M = [&](const E& x, const E& y) { return alg.meet(x, y); };
  auto atom = [&](Rng& rng) { return detail::sample_atom(s.atoms, rng); };
  auto fresh_for = [&](Rng& rng, const AtomSet& avoid) { return detail::sample_fresh(s.atoms, avoid, rng); };

  law("meet-assoc", [&](Rng& r) {
    E x = s.element(r), y = s.element(r), z = s.element(r);
    return same(M(x, M(y, z)), M(M(x, y), z));
  });
  law("meet-comm", [&](Rng& r) {
    E x = s.element(r), y = s.element(r);
    return same(M(x, y), M(y, x));
  });
  law("meet-idem", [&](Rng& r) {
    E x = s.element(r);
    return same(M(x, x), x);
  });
  law("join-assoc", [&](Rng& r) {
    E x = s.element(r), y = s.element(r), z = s.element(r);
    return same(J(x, J(y, z)), J(J(x, y), z));
  });
  law("join-comm", [&](Rng& r) {
    E x = s.element(r), y = s.element(r);
    return same(J(x, y), J(y, x));
  });
  law("absorb", [&](Rng& r) {
    E x = s.element(r), y = s.element(r);
    if (!alg.equal(M(x, J(x, y)), x)) return same(M(x, J(x, y)), x);
    return same(J(x, M(x, y)), x);
  });
  law("top", [&](Rng& r) {
    E x = s.element(r);
    return same(M(x, alg.top()), x);
  });
  law("bot", [&](Rng& r) {
    E x = s.element(r);
    return same(J(x, bot(alg)), x);
  });
  law("distrib-meet", [&](Rng& r) {
    E x = s.element(r), y = s.element(r), z = s.element(r);
    return same(M(x, J(y, z)), J(M(x, y), M(x, z)));
  });
  law("distrib-join", [&](Rng& r) {
    E x = s.element(r), y = s.element(r), z = s.element(r);
    return same(J(x, M(y, z)), M(J(x, y), J(x, z)));
  });
  law("distrib-fresh", [&](Rng& r) {
    E x = s.element(r), y = s.element(r);
    Atom a = fresh_for(r, alg.support(x));
    return same(J(x, alg.freshmeet(a, y)), alg.freshmeet(a, J(x, y)));
  });
  law("double-neg", [&](Rng& r) {
    E x = s.element(r);
    return same(alg.neg(alg.neg(x)), x);
  });
  law("complement", [&](Rng& r) {
    E x = s.element(r);
    if (!alg.equal(M(x, alg.neg(x)), bot(alg))) return same(M(x, alg.neg(x)), bot(alg));
    return same(J(x, alg.neg(x)), alg.top());
  });
  law("nabla-alpha", [&](Rng& r) {
    E x = s.element(r);
    Atom a = atom(r);
    Atom b = fresh_for(r, alg.support(x));
    return same(alg.freshmeet(b, alg.act(swap(b, a), x)), alg.freshmeet(a, x));
  });
  law("nabla-meet", [&](Rng& r) {
    E x = s.element(r), y = s.element(r);
    Atom a = atom(r);
    return same(alg.freshmeet(a, M(x, y)), M(alg.freshmeet(a, x), alg.freshmeet(a, y)));
  });
  law("nabla-join", [&](Rng& r) {
    E x = s.element(r), y = s.element(r);
    Atom a = fresh_for(r, alg.support(y));
    return same(alg.freshmeet(a, J(x, y)), J(alg.freshmeet(a, x), y));
  });
  law("nabla-leq", [&](Rng& r) {
    E x = s.element(r);
    return below(alg.freshmeet(atom(r), x), x);
  });
  law("nabla-fresh", [&](Rng& r) {
    E x = s.element(r);
    Atom a = fresh_for(r, alg.support(x));
    return same(alg.freshmeet(a, x), x);
  });
  law("nabla-glb", [&](Rng& r) {
    E x = s.element(r);
    Atom a = atom(r);
    // An a-fresh lower bound of x: its own freshmeet, met with a random a-fresh element.
    E z = M(alg.freshmeet(a, x), alg.freshmeet(a, s.element(r)));
    if (!leq(alg, z, x)) return CaseOutcome::fail("sampled bound is not below x");
    return below(z, alg.freshmeet(a, x));
  });
  law("nabla-support", [&](Rng& r) {
    E x = s.element(r);
    Atom a = atom(r);
    AtomSet bound = alg.support(x);
    bound.erase(a);
    AtomSet got = alg.support(alg.freshmeet(a, x));
    return CaseOutcome::check(std::includes(bound.begin(), bound.end(), got.begin(), got.end()),
                              [&] { return show(got) + " not within " + show(bound); });
  });
  law("neg-support", [&](Rng& r) {
    E x = s.element(r);
    return CaseOutcome::check(alg.support(alg.neg(x)) == alg.support(x), [&] { return alg.show(x); });
  });
  law("sigma-meet", [&](Rng& r) {
    E x = s.element(r), y = s.element(r);
    Atom a = atom(r);
    auto u = s.termlike(r);
    return same(alg.subst(M(x, y), a, u), M(alg.subst(x, a, u), alg.subst(y, a, u)));
  });
  law("sigma-neg", [&](Rng& r) {
    E x = s.element(r);
    Atom a = atom(r);
    auto u = s.termlike(r);
    return same(alg.subst(alg.neg(x), a, u), alg.neg(alg.subst(x, a, u)));
  });
  law("sigma-top", [&](Rng& r) {
    Atom a = atom(r);
    return same(alg.subst(alg.top(), a, s.termlike(r)), alg.top());
  });
  law("sigma-nabla", [&](Rng& r) {
    E y = s.element(r);
    Atom a = atom(r);
    auto u = s.termlike(r);
    AtomSet avoid = U.support(u);
    avoid.insert(a);
    Atom b = fresh_for(r, avoid);
    return same(alg.subst(alg.freshmeet(b, y), a, u), alg.freshmeet(b, alg.subst(y, a, u)));
  });
  law("sigma-eq", [&](Rng& r) {
    auto v1 = s.termlike(r), v2 = s.termlike(r), u = s.termlike(r);
    Atom a = atom(r);
    return same(alg.subst(alg.eq(v1, v2), a, u), alg.eq(U.subst(v1, a, u), U.subst(v2, a, u)));
  });
  law("eq-refl", [&](Rng& r) {
    auto u = s.termlike(r);
    return same(alg.eq(u, u), alg.top());
  });
  law("eq-subst", [&](Rng& r) {
    auto u = s.termlike(r), v = s.termlike(r);
    E z = s.element(r);
    Atom a = atom(r);
    E e = alg.eq(u, v);
    return same(M(e, alg.subst(z, a, u)), M(e, alg.subst(z, a, v)));
  });
  return report;
}

/// ∇a.x ≤ x[a := u] for every candidate u; with `exact`, also ∇a.x equals
/// the meet of those instances (valid when the candidates exhaust what a
/// fresh meet can see, as constants do in a finite Tarski lift).
template <FoleqAlgebra A>
bool freshmeet_char_check(const A& alg, const typename A::element& x, Atom a,
                          const std::vector<typename A::termlike>& candidates, bool exact) {
  auto lim = alg.freshmeet(a, x);
  auto meet = alg.top();
  for (const auto& u : candidates) {
    auto inst = alg.subst(x, a, u);
    if (!leq(alg, lim, inst)) return false;
    meet = alg.meet(meet, inst);
  }
  return !exact || alg.equal(lim, meet);
}

}  // namespace nomfol
