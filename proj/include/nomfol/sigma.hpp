#pragma once

// Substitution algebras, their amgis duals on characteristic sets, and the
// property suites for the substitution axioms.

#include <concepts>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "parser.hpp"
#include "random.hpp"
#include "suite.hpp"
#include "syntax.hpp"

namespace nomfol {

/// A termlike substitution algebra: substitution within the carrier and an
/// injection of atoms.
template <class U>
concept TermlikeAlgebra = requires(const U& alg, const typename U::element& x, Atom a, const Perm& pi) {
  { alg.atm(a) } -> std::same_as<typename U::element>;
  { alg.subst(x, a, x) } -> std::same_as<typename U::element>;
  { alg.act(pi, x) } -> std::same_as<typename U::element>;
  { alg.support(x) } -> std::same_as<AtomSet>;
  { alg.equal(x, x) } -> std::same_as<bool>;
  { alg.show(x) } -> std::same_as<std::string>;
};

/// A carrier with a substitution action whose substituted values come from
/// the termlike algebra returned by terms().
template <class X>
concept SigmaAlgebra = requires(const X& alg, const typename X::element& x, const typename X::termlike& u, Atom a,
                                const Perm& pi) {
  { alg.terms() };
  { alg.subst(x, a, u) } -> std::same_as<typename X::element>;
  { alg.act(pi, x) } -> std::same_as<typename X::element>;
  { alg.support(x) } -> std::same_as<AtomSet>;
  { alg.equal(x, x) } -> std::same_as<bool>;
  { alg.show(x) } -> std::same_as<std::string>;
  { alg.terms().support(u) } -> std::same_as<AtomSet>;
};

/// Syntax of first-order terms with substitution.
struct TermAlgebra {
  using element = Term;
  using termlike = Term;

  const TermAlgebra& terms() const { return *this; }
  Term atm(Atom a) const { return var(a); }
  Term subst(const Term& x, Atom a, const Term& u) const { return nomfol::subst(x, a, u); }
  Term act(const Perm& pi, const Term& x) const { return nomfol::act(pi, x); }
  AtomSet support(const Term& x) const { return x.atoms(); }
  bool equal(const Term& x, const Term& y) const { return x == y; }
  std::string show(const Term& x) const { return pretty(x); }
};

/// Formulas over terms, compared up to alpha-equivalence.
struct FormulaAlgebra {
  using element = Formula;
  using termlike = Term;

  const TermAlgebra& terms() const { return term_algebra; }
  Formula subst(const Formula& x, Atom a, const Term& u) const { return nomfol::subst(x, a, u); }
  Formula act(const Perm& pi, const Formula& x) const { return nomfol::act(pi, x); }
  AtomSet support(const Formula& x) const { return x.free_atoms(); }
  bool equal(const Formula& x, const Formula& y) const { return alpha_eq(x, y); }
  std::string show(const Formula& x) const { return pretty(x); }

  TermAlgebra term_algebra;
};

template <class X>
struct SigmaSampler {
  std::function<typename X::element(Rng&)> element;
  std::function<typename X::termlike(Rng&)> termlike;
  std::vector<Atom> atoms;
};

namespace detail {

inline Atom sample_atom(const std::vector<Atom>& pool, Rng& rng) { return pool[pick(rng, pool.size())]; }

/// A pool atom outside `avoid`, or the lowest fresh atom if none is left.
inline Atom sample_fresh(const std::vector<Atom>& pool, const AtomSet& avoid, Rng& rng) {
  std::vector<Atom> candidates;
  for (Atom a : pool)
    if (!avoid.count(a)) candidates.push_back(a);
  if (candidates.empty() || coin(rng, 20)) return fresh(avoid);
  return candidates[pick(rng, candidates.size())];
}

inline std::pair<Atom, Atom> sample_distinct(const std::vector<Atom>& pool, Rng& rng) {
  Atom a = sample_atom(pool, rng);
  Atom b = sample_atom(pool, rng);
  if (a == b) b = fresh({a});
  return {a, b};
}

}  // namespace detail

/// Checks the substitution axioms on `opts.n` random instances each. The
/// atom-injection axiom is included when the algebra is termlike.
template <SigmaAlgebra X>
SuiteReport sigma_axiom_suite(const X& alg, const SigmaSampler<X>& s, const SuiteOptions& opts,
                              const std::string& prefix = "sigma") {
  const auto& U = alg.terms();
  SuiteReport report;
  auto mismatch = [&](const auto& lhs, const auto& rhs) {
    return [&alg, lhs, rhs] { return alg.show(lhs) + " != " + alg.show(rhs); };
  };

  if constexpr (TermlikeAlgebra<X> && std::same_as<typename X::element, typename X::termlike>) {
    report.results.push_back(run_cases(prefix + "-a", opts, [&](Rng& rng) {
      Atom a = detail::sample_atom(s.atoms, rng);
      auto u = s.termlike(rng);
      auto lhs = alg.subst(alg.atm(a), a, u);
      return CaseOutcome::check(alg.equal(lhs, u), mismatch(lhs, u));
    }));
  }

  report.results.push_back(run_cases(prefix + "-id", opts, [&](Rng& rng) {
    auto x = s.element(rng);
    Atom a = detail::sample_atom(s.atoms, rng);
    auto lhs = alg.subst(x, a, U.atm(a));
    return CaseOutcome::check(alg.equal(lhs, x), mismatch(lhs, x));
  }));

  report.results.push_back(run_cases(prefix + "-fresh", opts, [&](Rng& rng) {
    auto x = s.element(rng);
    Atom a = detail::sample_fresh(s.atoms, alg.support(x), rng);
    auto u = s.termlike(rng);
    auto lhs = alg.subst(x, a, u);
    return CaseOutcome::check(alg.equal(lhs, x), mismatch(lhs, x));
  }));

  report.results.push_back(run_cases(prefix + "-alpha", opts, [&](Rng& rng) {
    auto x = s.element(rng);
    Atom a = detail::sample_atom(s.atoms, rng);
    Atom b = detail::sample_fresh(s.atoms, alg.support(x), rng);
    auto u = s.termlike(rng);
    auto lhs = alg.subst(x, a, u);
    auto rhs = alg.subst(alg.act(swap(b, a), x), b, u);
    return CaseOutcome::check(alg.equal(lhs, rhs), mismatch(lhs, rhs));
  }));

  report.results.push_back(run_cases(prefix + "-sigma", opts, [&](Rng& rng) {
    auto x = s.element(rng);
    auto [a, b] = detail::sample_distinct(s.atoms, rng);
    auto u = s.termlike(rng);
    for (int attempt = 0; attempt < 20; ++attempt) {
      auto v = s.termlike(rng);
      if (U.support(v).count(a)) continue;
      auto lhs = alg.subst(alg.subst(x, a, u), b, v);
      auto rhs = alg.subst(alg.subst(x, b, v), a, U.subst(u, b, v));
      return CaseOutcome::check(alg.equal(lhs, rhs), mismatch(lhs, rhs));
    }
    return CaseOutcome::skip();
  }));

  report.results.push_back(run_cases(prefix + "-equivariant", opts, [&](Rng& rng) {
    auto x = s.element(rng);
    Atom a = detail::sample_atom(s.atoms, rng);
    auto u = s.termlike(rng);
    Perm pi = random_perm(s.atoms, rng);
    auto lhs = alg.act(pi, alg.subst(x, a, u));
    auto rhs = alg.subst(alg.act(pi, x), pi(a), U.act(pi, u));
    return CaseOutcome::check(alg.equal(lhs, rhs), mismatch(lhs, rhs));
  }));
  return report;
}

/// Simultaneous substitution: targets are first swapped to fresh atoms, then
/// substituted one after another.
template <SigmaAlgebra X>
typename X::element sim_subst(const X& alg, const typename X::element& x,
                              const std::vector<std::pair<Atom, typename X::termlike>>& pairs) {
  AtomSet avoid = alg.support(x);
  AtomSet targets;
  for (const auto& [a, u] : pairs) {
    if (!targets.insert(a).second) throw std::invalid_argument("sim_subst: atom " + a.name() + " listed twice");
    avoid.insert(a);
    AtomSet su = alg.terms().support(u);
    avoid.insert(su.begin(), su.end());
  }
  std::vector<Atom> renamed = fresh_n(avoid, pairs.size());
  Perm pi;
  for (std::size_t i = 0; i < pairs.size(); ++i) pi = compose(pi, swap(renamed[i], pairs[i].first));
  auto y = alg.act(pi, x);
  for (std::size_t i = 0; i < pairs.size(); ++i) y = alg.subst(y, renamed[i], pairs[i].second);
  return y;
}

// ---------------------------------------------------------------------------
// Characteristic sets and the amgis action.

/// A subset of a carrier given by a decidable membership test and a declared
/// finite support.
template <class T>
struct CharSet {
  std::function<bool(const T&)> member;
  AtomSet declared_support;
  std::string label;

  bool contains(const T& x) const { return member(x); }
};

template <class T>
CharSet<T> everything() {
  return {[](const T&) { return true; }, {}, "everything"};
}

template <class T>
CharSet<T> nothing() {
  return {[](const T&) { return false; }, {}, "nothing"};
}

template <class T>
CharSet<T> complement(const CharSet<T>& p) {
  return {[m = p.member](const T& x) { return !m(x); }, p.declared_support, "~(" + p.label + ")"};
}

template <class T>
CharSet<T> intersection(const CharSet<T>& p, const CharSet<T>& q) {
  return {[m = p.member, n = q.member](const T& x) { return m(x) && n(x); },
          set_union(p.declared_support, q.declared_support), "(" + p.label + " & " + q.label + ")"};
}

template <class T>
CharSet<T> union_of(const CharSet<T>& p, const CharSet<T>& q) {
  return {[m = p.member, n = q.member](const T& x) { return m(x) || n(x); },
          set_union(p.declared_support, q.declared_support), "(" + p.label + " | " + q.label + ")"};
}

/// An amgis algebra: the action p[u <- a] dual to substitution, equality
/// decided on the algebra's own terms (probes for characteristic sets) and a
/// declared support that bounds the atoms an element depends on.
template <class P>
concept AmgisAlgebra = requires(const P& alg, const typename P::element& p, const typename P::termlike& u, Atom a,
                                const Perm& pi) {
  { alg.terms() };
  { alg.amgis(p, u, a) } -> std::same_as<typename P::element>;
  { alg.act(pi, p) } -> std::same_as<typename P::element>;
  { alg.support(p) } -> std::same_as<AtomSet>;
  { alg.equal(p, p) } -> std::same_as<bool>;
  { alg.show(p) } -> std::same_as<std::string>;
};

/// Probe elements for comparing characteristic sets, chosen per comparison
/// from the atoms the compared sets are declared to depend on.
template <class T>
using ProbeSource = std::function<std::vector<T>(const AtomSet& focus)>;

/// Subsets of a sigma algebra with the pointwise actions:
/// x in p[u <- a] iff x[a := u] in p, and x in pi.p iff pi^-1.x in p.
template <SigmaAlgebra X>
class PowAmgis {
public:
  using element = CharSet<typename X::element>;
  using termlike = typename X::termlike;

  PowAmgis(X base, ProbeSource<typename X::element> probes) : base_(std::move(base)), probes_(std::move(probes)) {}

  const auto& terms() const { return base_.terms(); }
  const X& base() const { return base_; }

  element amgis(const element& p, const termlike& u, Atom a) const {
    AtomSet supp = set_union(p.declared_support, terms().support(u));
    supp.insert(a);
    return {[base = base_, m = p.member, u, a](const typename X::element& x) { return m(base.subst(x, a, u)); },
            std::move(supp), p.label + "[" + terms().show(u) + "<-" + a.name() + "]"};
  }

  element act(const Perm& pi, const element& p) const {
    return {[base = base_, m = p.member, inv = pi.inverse()](const typename X::element& x) {
              return m(base.act(inv, x));
            },
            nomfol::act(pi, p.declared_support), "pi." + p.label};
  }

  AtomSet support(const element& p) const { return p.declared_support; }

  std::vector<typename X::element> probes(const AtomSet& focus) const { return probes_(focus); }

  /// Agreement on the probes drawn for the union of declared supports.
  bool equal(const element& p, const element& q) const {
    for (const auto& x : probes_(set_union(p.declared_support, q.declared_support)))
      if (p.member(x) != q.member(x)) return false;
    return true;
  }

  /// Agreement on the probes for `focus` widened by both declared supports.
  bool equal_at(const element& p, const element& q, const AtomSet& focus) const {
    for (const auto& x : probes_(set_union(focus, set_union(p.declared_support, q.declared_support))))
      if (p.member(x) != q.member(x)) return false;
    return true;
  }

  std::string show(const element& p) const { return p.label + " supp " + nomfol::show(p.declared_support); }

private:
  X base_;
  ProbeSource<typename X::element> probes_;
};

template <SigmaAlgebra X>
CharSet<typename X::element> powamgis_action(const PowAmgis<X>& P, const CharSet<typename X::element>& p,
                                             const typename X::termlike& u, Atom a) {
  return P.amgis(p, u, a);
}

/// The amgis algebra on a one-point carrier.
template <TermlikeAlgebra U>
struct TrivialAmgis {
  using element = std::monostate;
  using termlike = typename U::element;

  const U& terms() const { return term_algebra; }
  element amgis(element, const termlike&, Atom) const { return {}; }
  element act(const Perm&, element) const { return {}; }
  AtomSet support(element) const { return {}; }
  bool equal(element, element) const { return true; }
  std::string show(element) const { return "*"; }

  U term_algebra;
};

template <class P>
struct AmgisSampler {
  std::function<typename P::element(Rng&)> element;
  std::function<typename P::termlike(Rng&)> termlike;
  std::vector<Atom> atoms;
};

/// p[v <- b][u <- a] = p[u[b := v] <- a][v <- b] whenever a # v (a != b).
template <AmgisAlgebra P>
SuiteReport amgis_axiom_suite(const P& alg, const AmgisSampler<P>& s, const SuiteOptions& opts,
                              const std::string& prefix = "amgis") {
  const auto& U = alg.terms();
  SuiteReport report;
  report.results.push_back(run_cases(prefix + "-sigma", opts, [&](Rng& rng) {
    auto p = s.element(rng);
    auto [a, b] = detail::sample_distinct(s.atoms, rng);
    auto u = s.termlike(rng);
    for (int attempt = 0; attempt < 20; ++attempt) {
      auto v = s.termlike(rng);
      if (U.support(v).count(a)) continue;
      auto lhs = alg.amgis(alg.amgis(p, v, b), u, a);
      auto rhs = alg.amgis(alg.amgis(p, U.subst(u, b, v), a), v, b);
      return CaseOutcome::check(alg.equal(lhs, rhs), [&] {
        return alg.show(p) + " u=" + U.show(u) + " v=" + U.show(v) + " a=" + a.name() + " b=" + b.name();
      });
    }
    return CaseOutcome::skip();
  }));
  return report;
}

namespace detail {

// Probe-based carriers pick probes per comparison; comparing both sides of
// an implication on one focus keeps them on the same sample.
template <AmgisAlgebra P>
bool equal_at(const P& alg, const typename P::element& p, const typename P::element& q, const AtomSet& focus) {
  if constexpr (requires { alg.equal_at(p, q, focus); }) return alg.equal_at(p, q, focus);
  else return alg.equal(p, q);
}

}  // namespace detail

/// Tests exactness at one instance: if p[u <- c] = q[u <- c] for a fresh c
/// then p = q. Returns false exactly when the implication is violated.
template <AmgisAlgebra P>
bool exactness_check(const P& alg, const typename P::element& p, const typename P::element& q,
                     const typename P::termlike& u) {
  AtomSet context = set_union(set_union(alg.support(p), alg.support(q)), alg.terms().support(u));
  return new_check(context, [&](Atom c) {
    AtomSet focus = context;
    focus.insert(c);
    return !detail::equal_at(alg, alg.amgis(p, u, c), alg.amgis(q, u, c), focus) ||
           detail::equal_at(alg, p, q, focus);
  });
}

/// Membership of p in the equality element (u = v): for a fresh c, the
/// images p[u <- c] and p[v <- c] coincide.
template <AmgisAlgebra P>
bool eq_element_member(const P& alg, const typename P::element& p, const typename P::termlike& u,
                       const typename P::termlike& v) {
  AtomSet context = set_union(set_union(alg.support(p), alg.terms().support(u)), alg.terms().support(v));
  return new_check(context, [&](Atom c) { return alg.equal(alg.amgis(p, u, c), alg.amgis(p, v, c)); });
}

/// The same test at `extra` further fresh atoms; used to confirm that one
/// witness decides the new-quantified condition.
template <AmgisAlgebra P>
bool eq_element_member_all(const P& alg, const typename P::element& p, const typename P::termlike& u,
                           const typename P::termlike& v, std::size_t extra) {
  AtomSet context = set_union(set_union(alg.support(p), alg.terms().support(u)), alg.terms().support(v));
  for (Atom c : fresh_n(context, extra + 1))
    if (!alg.equal(alg.amgis(p, u, c), alg.amgis(p, v, c))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Sets of amgis-algebra elements with the dual substitution action.

/// Subsets X of an amgis algebra with
/// p in X[a := u] iff (new c) p[u <- c] in (c a).X,
/// the new-quantifier discharged at one atom fresh for X, u, a and p.
template <AmgisAlgebra P>
class PowSigma {
public:
  using element = CharSet<typename P::element>;
  using termlike = typename P::termlike;

  PowSigma(P base, ProbeSource<typename P::element> probes) : base_(std::move(base)), probes_(std::move(probes)) {}

  const auto& terms() const { return base_.terms(); }
  const P& base() const { return base_; }

  element subst(const element& X, Atom a, const termlike& u) const {
    AtomSet supp = X.declared_support;
    supp.erase(a);
    AtomSet su = terms().support(u);
    supp.insert(su.begin(), su.end());
    auto member = [base = base_, m = X.member, declared = X.declared_support, a, u](const typename P::element& p) {
      AtomSet context = set_union(declared, base.terms().support(u));
      context.insert(a);
      AtomSet sp = base.support(p);
      context.insert(sp.begin(), sp.end());
      return new_check(context, [&](Atom c) { return m(base.act(swap(c, a), base.amgis(p, u, c))); });
    };
    return {std::move(member), std::move(supp), X.label + "[" + a.name() + ":=" + terms().show(u) + "]"};
  }

  element act(const Perm& pi, const element& X) const {
    return {[base = base_, m = X.member, inv = pi.inverse()](const typename P::element& p) {
              return m(base.act(inv, p));
            },
            nomfol::act(pi, X.declared_support), "pi." + X.label};
  }

  AtomSet support(const element& X) const { return X.declared_support; }

  bool equal(const element& X, const element& Y) const {
    for (const auto& p : probes_(set_union(X.declared_support, Y.declared_support)))
      if (X.member(p) != Y.member(p)) return false;
    return true;
  }

  std::string show(const element& X) const { return X.label + " supp " + nomfol::show(X.declared_support); }

private:
  P base_;
  ProbeSource<typename P::element> probes_;
};

template <AmgisAlgebra P>
CharSet<typename P::element> powsigma_action(const PowSigma<P>& S, const CharSet<typename P::element>& X, Atom a,
                                             const typename P::termlike& u) {
  return S.subst(X, a, u);
}

template <class P>
struct PowSigmaSampler {
  std::function<typename P::element(Rng&)> element;
  std::function<typename P::termlike(Rng&)> termlike;
  std::vector<Atom> atoms;
};

/// Sampled check of the two admission conditions for a set X of amgis
/// elements: (new a) p[u <- a] in X iff p in X, and (new b) p[b <- a] in X
/// iff (b a).p in X. Both are necessarily approximate.
template <AmgisAlgebra P>
SuiteReport powsigma_validate(const P& alg, const CharSet<typename P::element>& X, const PowSigmaSampler<P>& s,
                              const SuiteOptions& opts) {
  const auto& U = alg.terms();
  SuiteReport report;
  report.results.push_back(run_cases("powsigma-fresh", opts, [&](Rng& rng) {
    auto u = s.termlike(rng);
    Atom a = fresh(set_union(X.declared_support, U.support(u)));
    auto p = s.element(rng);
    AtomSet sp = alg.support(p);
    if (!sp.empty() && coin(rng, 50)) p = alg.act(swap(a, *std::next(sp.begin(), pick(rng, sp.size()))), p);
    bool ok = X.member(alg.amgis(p, u, a)) == X.member(p);
    return CaseOutcome::check(ok, [&] { return alg.show(p) + " u=" + U.show(u) + " a=" + a.name(); });
  }));
  report.results.push_back(run_cases("powsigma-alpha", opts, [&](Rng& rng) {
    Atom a = detail::sample_atom(s.atoms, rng);
    AtomSet context = X.declared_support;
    context.insert(a);
    Atom b = fresh(context);
    auto p = s.element(rng);
    bool ok = X.member(alg.amgis(p, U.atm(b), a)) == X.member(alg.act(swap(b, a), p));
    return CaseOutcome::check(ok, [&] { return alg.show(p) + " a=" + a.name() + " b=" + b.name(); });
  }));
  return report;
}

// ---------------------------------------------------------------------------
// Probe terms.

/// All terms up to `depth` over `atoms` and the signature's symbols, in order
/// of increasing depth, stopping after `limit` terms.
inline std::vector<Term> enumerate_terms(const Signature& sig, const AtomSet& atoms, std::size_t depth,
                                         std::size_t limit) {
  std::vector<Term> out;
  std::vector<std::size_t> level_end;
  for (Atom a : atoms) out.push_back(var(a));
  for (const auto& c : sig.constants()) out.push_back(Term::app(c.name, {}));
  level_end.push_back(out.size());
  for (std::size_t d = 1; d <= depth && out.size() < limit; ++d) {
    std::size_t prev = level_end.back();
    std::size_t prev_start = d >= 2 ? level_end[d - 2] : 0;
    for (const auto& f : sig.functions()) {
      if (f.arity == 0) continue;
      // Tuples over all earlier terms with at least one argument from the
      // previous level, so each term appears once.
      std::vector<std::size_t> idx(f.arity, 0);
      while (out.size() < limit) {
        bool fresh_level = false;
        for (auto i : idx) fresh_level |= (i >= prev_start && i < prev);
        if (fresh_level) {
          std::vector<Term> args;
          for (auto i : idx) args.push_back(out[i]);
          out.push_back(Term::app(f.name, std::move(args)));
        }
        std::size_t k = 0;
        while (k < f.arity && ++idx[k] == prev) idx[k++] = 0;
        if (k == f.arity) break;
      }
    }
    level_end.push_back(out.size());
  }
  if (out.size() > limit) out.erase(out.begin() + static_cast<std::ptrdiff_t>(limit), out.end());
  return out;
}

/// Default probes: terms up to depth 2 over the focus atoms plus three more
/// fresh atoms, capped at `limit`.
inline ProbeSource<Term> default_term_probes(Signature sig, std::size_t limit = 100) {
  return [sig = std::move(sig), limit](const AtomSet& focus) {
    AtomSet atoms = focus;
    for (Atom a : fresh_n(focus, 3)) atoms.insert(a);
    return enumerate_terms(sig, atoms, 2, limit);
  };
}

/// Random characteristic sets of terms built from a few equivariant shapes.
inline CharSet<Term> random_term_set(const Signature& sig, const std::vector<Atom>& atoms, Rng& rng,
                                     std::size_t depth = 2) {
  switch (pick(rng, depth == 0 ? 4 : 6)) {
    case 0: {
      Term t = random_term(sig, atoms, 2, rng);
      return {[t](const Term& x) { return x == t; }, t.atoms(), "{" + pretty(t) + "}"};
    }
    case 1: {
      Atom a = atoms[pick(rng, atoms.size())];
      return {[a](const Term& x) { return x.atoms().count(a) > 0; }, {a}, "mentions(" + a.name() + ")"};
    }
    case 2: {
      Term t = random_term(sig, atoms, 1, rng);
      return {[t](const Term& x) {
                std::vector<Term> subs;
                collect_subterms(x, subs);
                return std::find(subs.begin(), subs.end(), t) != subs.end();
              },
              t.atoms(), "has(" + pretty(t) + ")"};
    }
    case 3: {
      std::size_t d = pick(rng, 3);
      return {[d](const Term& x) { return nomfol::depth(x) <= d; }, {}, "depth<=" + std::to_string(d)};
    }
    case 4: return complement(random_term_set(sig, atoms, rng, depth - 1));
    default:
      if (coin(rng, 50)) return intersection(random_term_set(sig, atoms, rng, depth - 1), random_term_set(sig, atoms, rng, depth - 1));
      return union_of(random_term_set(sig, atoms, rng, depth - 1), random_term_set(sig, atoms, rng, depth - 1));
  }
}

}  // namespace nomfol
