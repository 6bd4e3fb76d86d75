#pragma once

// Bounded backward proof search, exhaustive finite countermodel search, a
// forward generator of derivable sequents, and the interprovability check.

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "random.hpp"
#include "sequent.hpp"
#include "tarski.hpp"

namespace nomfol {

/// Bounds for proof search. Only the non-invertible steps (AllL, EqR, EqL)
/// count toward max_depth; invertible rules are applied eagerly for free.
struct ProverBudget {
  std::size_t max_depth = 4;
  std::vector<Term> term_universe;  // empty: subterms, constants, one fresh atom
  std::size_t max_branching = 32;   // alternatives tried per non-invertible node
  std::size_t max_nodes = 200000;
};

struct ProverStats {
  std::size_t nodes = 0;
  std::size_t memo_hits = 0;
  bool exhausted = false;
};

struct ProveResult {
  std::optional<Proof> proof;
  ProverStats stats;

  explicit operator bool() const { return proof.has_value(); }
};

// ---------------------------------------------------------------------------
// Term occurrences.

/// Every atom in phi, bound ones included.
inline AtomSet all_atoms(const Formula& phi) {
  AtomSet out = phi.free_atoms();
  for (const auto& t : phi.terms()) out.insert(t.atoms().begin(), t.atoms().end());
  switch (phi.kind()) {
    case FormulaKind::And: {
      AtomSet l = all_atoms(phi.left()), r = all_atoms(phi.right());
      out.insert(l.begin(), l.end());
      out.insert(r.begin(), r.end());
      break;
    }
    case FormulaKind::Neg:
    case FormulaKind::All: {
      AtomSet b = all_atoms(phi.body());
      out.insert(b.begin(), b.end());
      if (phi.kind() == FormulaKind::All) out.insert(phi.binder());
      break;
    }
    default: break;
  }
  return out;
}

namespace detail {

/// Replaces free occurrences of r in phi by x, outermost first, numbering
/// occurrences left to right. `only` selects a single occurrence; otherwise
/// all are replaced. Occurrences under a binder of an atom of r are not free.
class Abstractor {
public:
  Abstractor(Term r, Atom x, std::optional<std::size_t> only) : r_(std::move(r)), x_(x), only_(only) {}

  std::size_t count() const { return seen_; }

  Term term(const Term& t) {
    if (t == r_) {
      std::size_t index = seen_++;
      return (!only_ || *only_ == index) ? var(x_) : t;
    }
    if (t.is_var()) return t;
    std::vector<Term> args;
    for (const auto& s : t.args()) args.push_back(term(s));
    return Term::app(t.symbol(), std::move(args));
  }

  Formula formula(const Formula& phi) {
    switch (phi.kind()) {
      case FormulaKind::Bot: return phi;
      case FormulaKind::Eq: {
        Term l = term(phi.terms()[0]);
        Term r = term(phi.terms()[1]);
        return Formula::eq(l, r);
      }
      case FormulaKind::Pred: {
        std::vector<Term> args;
        for (const auto& t : phi.terms()) args.push_back(term(t));
        return Formula::pred(phi.symbol(), std::move(args));
      }
      case FormulaKind::And: {
        Formula l = formula(phi.left());
        Formula r = formula(phi.right());
        return Formula::conj(l, r);
      }
      case FormulaKind::Neg: return Formula::neg(formula(phi.body()));
      case FormulaKind::All:
        if (r_.atoms().count(phi.binder())) return phi;
        return Formula::all(phi.binder(), formula(phi.body()));
    }
    return phi;
  }

private:
  Term r_;
  Atom x_;
  std::optional<std::size_t> only_;
  std::size_t seen_ = 0;
};

}  // namespace detail

struct Abstraction {
  Formula body;  // phi with the chosen occurrences replaced by `atom`
  Atom atom;
};

/// The abstractions of r in phi tried by search: all free occurrences at
/// once, then each single occurrence, leftmost first (when there are two or
/// more). `avoid` lists atoms the abstraction atom must also miss.
inline std::vector<Abstraction> abstractions(const Formula& phi, const Term& r, const AtomSet& avoid = {}) {
  AtomSet used = set_union(set_union(all_atoms(phi), r.atoms()), avoid);
  Atom x = fresh(used);
  detail::Abstractor counter(r, x, std::nullopt);
  Formula all = counter.formula(phi);
  std::size_t n = counter.count();
  std::vector<Abstraction> out;
  if (n == 0) return out;
  out.push_back({all, x});
  if (n >= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      detail::Abstractor one(r, x, i);
      out.push_back({one.formula(phi), x});
    }
  }
  return out;
}

/// Terms occurring in the sequent whose atoms are all free in it.
inline std::vector<Term> free_subterms(const Sequent& s) {
  AtomSet fa = s.free_atoms();
  std::vector<Term> all;
  for (const auto& f : s.left) collect_subterms(f, all);
  for (const auto& f : s.right) collect_subterms(f, all);
  std::vector<Term> out;
  for (const auto& t : all)
    if (std::includes(fa.begin(), fa.end(), t.atoms().begin(), t.atoms().end())) out.push_back(t);
  return out;
}

inline std::vector<Term> default_universe(const Sequent& s, const Signature& sig) {
  std::vector<Term> out = free_subterms(s);
  for (const auto& c : sig.constants()) {
    Term t = Term::app(c.name, {});
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  AtomSet used = s.free_atoms();
  for (const auto& f : s.left) used = set_union(used, all_atoms(f));
  for (const auto& f : s.right) used = set_union(used, all_atoms(f));
  out.push_back(var(fresh(used)));
  return out;
}

// ---------------------------------------------------------------------------
// Backward search.

class Prover {
public:
  Prover(const Signature& sig, ProverBudget budget) : sig_(sig), budget_(std::move(budget)) {}

  ProveResult prove(const Sequent& root) {
    stats_ = {};
    failed_.clear();
    universe_ = budget_.term_universe.empty() ? default_universe(root, sig_) : budget_.term_universe;
    auto proof = search(root, budget_.max_depth);
    return {std::move(proof), stats_};
  }

private:
  static Proof node(Rule rule, const Sequent& s) {
    Proof p;
    p.rule = rule;
    p.conclusion = s;
    return p;
  }

  std::optional<Proof> search(const Sequent& s, std::size_t depth) {
    if (++stats_.nodes > budget_.max_nodes) {
      stats_.exhausted = true;
      return std::nullopt;
    }
    for (const auto& f : s.left)
      if (s.right.contains(f)) {
        Proof p = node(Rule::Hyp, s);
        p.principal = f;
        return p;
      }
    if (s.left.contains(Formula::bot())) return node(Rule::BotL, s);

    std::string key = s.key();
    if (auto it = failed_.find(key); it != failed_.end() && it->second >= depth) {
      ++stats_.memo_hits;
      return std::nullopt;
    }
    std::optional<Proof> result;
    if (!invertible(s, depth, result) && depth > 0) result = non_invertible(s, depth);
    if (!result && !stats_.exhausted) {
      auto& d = failed_[key];
      d = std::max(d, depth);
    }
    return result;
  }

  /// Applies the first invertible rule that fits, leaving the outcome in
  /// `out`. Returns false when no invertible rule applies.
  bool invertible(const Sequent& s, std::size_t depth, std::optional<Proof>& out) {
    for (const auto& f : s.left) {
      if (f.kind() == FormulaKind::And) {
        Proof p = node(Rule::AndL, s);
        p.principal = f;
        out = one_premise(std::move(p), {s.left.without(f).with(f.left()).with(f.right()), s.right}, depth);
        return true;
      }
      if (f.kind() == FormulaKind::Neg) {
        Proof p = node(Rule::NegL, s);
        p.principal = f;
        out = one_premise(std::move(p), {s.left.without(f), s.right.with(f.body())}, depth);
        return true;
      }
    }
    for (const auto& f : s.right) {
      if (f.kind() == FormulaKind::Neg) {
        Proof p = node(Rule::NegR, s);
        p.principal = f;
        out = one_premise(std::move(p), {s.left.with(f.body()), s.right.without(f)}, depth);
        return true;
      }
      if (f.kind() == FormulaKind::All) {
        Sequent rest{s.left, s.right.without(f)};
        AtomSet fa = s.free_atoms();
        Atom b = fa.count(f.binder()) ? fresh(set_union(fa, all_atoms(f))) : f.binder();
        Proof p = node(Rule::AllR, s);
        p.principal = f;
        p.atom = b;
        out = one_premise(std::move(p), {rest.left, rest.right.with(subst(f.body(), f.binder(), var(b)))}, depth);
        return true;
      }
      if (f.kind() == FormulaKind::And) {
        FormulaSet rest = s.right.without(f);
        auto first = search({s.left, rest.with(f.left())}, depth);
        if (!first) return true;
        auto second = search({s.left, rest.with(f.right())}, depth);
        if (!second) return true;
        Proof p = node(Rule::AndR, s);
        p.principal = f;
        p.premises.push_back(std::move(*first));
        p.premises.push_back(std::move(*second));
        out = std::move(p);
        return true;
      }
    }
    return false;
  }

  std::optional<Proof> one_premise(Proof p, const Sequent& premise, std::size_t depth) {
    auto sub = search(premise, depth);
    if (!sub) return std::nullopt;
    p.premises.push_back(std::move(*sub));
    return p;
  }

  std::optional<Proof> non_invertible(const Sequent& s, std::size_t depth) {
    std::vector<Term> terms = universe_;
    for (const auto& t : free_subterms(s))
      if (std::find(terms.begin(), terms.end(), t) == terms.end()) terms.push_back(t);

    std::size_t tried = 0;
    auto attempt = [&](Proof p, const Sequent& premise) -> std::optional<Proof> {
      ++tried;
      return one_premise(std::move(p), premise, depth - 1);
    };
    auto more = [&] { return tried < budget_.max_branching && !stats_.exhausted; };

    bool has_eq = false;
    for (const auto& f : s.left) has_eq |= f.kind() == FormulaKind::Eq;

    // r = r wanted on the right: one EqR step closes it.
    for (const auto& f : s.right) {
      if (!more()) return std::nullopt;
      if (f.kind() != FormulaKind::Eq || !(f.terms()[0] == f.terms()[1])) continue;
      Proof p = node(Rule::EqR, s);
      p.term = f.terms()[0];
      if (auto r = attempt(std::move(p), {s.left.with(f), s.right})) return r;
    }
    for (const auto& f : s.left) {
      if (f.kind() != FormulaKind::All) continue;
      for (const auto& t : terms) {
        if (!more()) return std::nullopt;
        Formula inst = subst(f.body(), f.binder(), t);
        if (s.left.contains(inst)) continue;
        Proof p = node(Rule::AllL, s);
        p.principal = f;
        p.term = t;
        if (auto r = attempt(std::move(p), {s.left.with(inst), s.right})) return r;
      }
    }
    for (const auto& e : s.left) {
      if (e.kind() != FormulaKind::Eq || e.terms()[0] == e.terms()[1]) continue;
      const Term& r1 = e.terms()[0];
      const Term& r = e.terms()[1];
      for (const auto& f : s.left) {
        for (const auto& abs : abstractions(f, r, r1.atoms())) {
          if (!more()) return std::nullopt;
          Formula after = subst(abs.body, abs.atom, r1);
          if (s.left.contains(after)) continue;
          Proof p = node(Rule::EqL, s);
          p.term = r;
          p.term2 = r1;
          p.abstraction = abs.body;
          p.atom = abs.atom;
          if (auto res = attempt(std::move(p), {s.left.with(after), s.right})) return res;
        }
      }
    }
    if (has_eq) {
      for (const auto& t : terms) {
        if (!more()) return std::nullopt;
        Formula refl = Formula::eq(t, t);
        if (s.left.contains(refl)) continue;
        Proof p = node(Rule::EqR, s);
        p.term = t;
        if (auto r = attempt(std::move(p), {s.left.with(refl), s.right})) return r;
      }
    }
    return std::nullopt;
  }

  const Signature& sig_;
  ProverBudget budget_;
  ProverStats stats_;
  std::vector<Term> universe_;
  std::unordered_map<std::string, std::size_t> failed_;
};

inline ProveResult prove(const Sequent& s, const Signature& sig, const ProverBudget& budget = {}) {
  return Prover(sig, budget).prove(s);
}

// ---------------------------------------------------------------------------
// Countermodels.

struct Countermodel {
  OrdinaryModel model;
  Valuation valuation;
};

struct CountermodelResult {
  std::optional<Countermodel> found;
  std::size_t models_tried = 0;
  bool exhausted = false;  // stopped by the model budget, not by running out of models

  explicit operator bool() const { return found.has_value(); }
};

namespace detail {

inline void used_symbols(const Term& t, std::set<std::string>& funs) {
  if (t.is_var()) return;
  funs.insert(t.symbol());
  for (const auto& s : t.args()) used_symbols(s, funs);
}

inline void used_symbols(const Formula& f, std::set<std::string>& funs, std::set<std::string>& preds) {
  for (const auto& t : f.terms()) used_symbols(t, funs);
  if (f.kind() == FormulaKind::Pred) preds.insert(f.symbol());
  if (f.kind() == FormulaKind::And) {
    used_symbols(f.left(), funs, preds);
    used_symbols(f.right(), funs, preds);
  } else if (f.kind() == FormulaKind::Neg || f.kind() == FormulaKind::All) {
    used_symbols(f.body(), funs, preds);
  }
}

}  // namespace detail

/// Searches k = 1..max_k; for each k, tables of the used symbols in
/// lexicographic order (last entry fastest), and for each model every
/// valuation of the free atoms with default 0. Symbols declared but unused
/// get all-zero tables. Stops after `max_models` models.
inline CountermodelResult find_countermodel(const Sequent& s, const Signature& sig, std::size_t max_k,
                                            std::size_t max_models = 200000) {
  std::set<std::string> funs, preds;
  for (const auto& f : s.left) detail::used_symbols(f, funs, preds);
  for (const auto& f : s.right) detail::used_symbols(f, funs, preds);
  CountermodelResult result;
  AtomSet fa = s.free_atoms();

  for (std::size_t k = 1; k <= max_k; ++k) {
    OrdinaryModel N;
    N.k = k;
    N.sig = sig;
    struct Slot {
      std::vector<Value>* table;
      std::size_t index;
      Value limit;
    };
    std::vector<Slot> slots;
    for (const auto& f : sig.functions()) {
      auto& t = N.funs[f.name];
      t.assign(OrdinaryModel::rows(k, f.arity), 0);
    }
    for (const auto& p : sig.predicates()) {
      auto& t = N.preds[p.name];
      t.assign(OrdinaryModel::rows(k, p.arity), 0);
    }
    for (const auto& f : sig.functions())
      if (funs.count(f.name))
        for (std::size_t i = 0; i < N.funs[f.name].size(); ++i) slots.push_back({&N.funs[f.name], i, Value(k)});
    for (const auto& p : sig.predicates())
      if (preds.count(p.name))
        for (std::size_t i = 0; i < N.preds[p.name].size(); ++i) slots.push_back({&N.preds[p.name], i, Value(2)});

    std::vector<Valuation> valuations;
    {
      std::vector<Atom> order(fa.begin(), fa.end());
      std::size_t rows = OrdinaryModel::rows(k, order.size());
      for (std::size_t r = 0; r < rows; ++r) {
        std::map<Atom, Value> m;
        std::size_t rest = r;
        for (std::size_t i = order.size(); i-- > 0;) {
          m[order[i]] = static_cast<Value>(rest % k);
          rest /= k;
        }
        valuations.emplace_back(std::move(m), 0);
      }
    }

    while (true) {
      if (result.models_tried >= max_models) {
        result.exhausted = true;
        return result;
      }
      ++result.models_tried;
      for (const auto& v : valuations) {
        bool refutes = true;
        for (const auto& f : s.left)
          if (!standard_eval(f, N, v)) {
            refutes = false;
            break;
          }
        if (refutes)
          for (const auto& f : s.right)
            if (standard_eval(f, N, v)) {
              refutes = false;
              break;
            }
        if (refutes) {
          result.found = Countermodel{N, v};
          return result;
        }
      }
      std::size_t i = slots.size();
      while (i > 0) {
        --i;
        Value& cell = (*slots[i].table)[slots[i].index];
        if (++cell < slots[i].limit) break;
        cell = 0;
        if (i == 0) {
          i = slots.size() + 1;
          break;
        }
      }
      if (slots.empty() || i == slots.size() + 1) break;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Forward generation of derivable sequents.

/// Adds formulas to every sequent of a proof. Can break an AllR side
/// condition, so callers re-check the result.
inline Proof weaken(const Proof& p, const FormulaSet& left, const FormulaSet& right) {
  Proof out = p;
  out.conclusion.left = p.conclusion.left.unite(left);
  out.conclusion.right = p.conclusion.right.unite(right);
  for (auto& q : out.premises) q = weaken(q, left, right);
  return out;
}

struct GeneratorConfig {
  Signature sig;
  std::vector<Atom> atoms;
  std::size_t max_rules = 8;
  FormulaShape shape{};
};

inline GeneratorConfig default_generator_config() {
  GeneratorConfig cfg;
  cfg.sig.declare_function("f", 1);
  cfg.sig.declare_function("c", 0);
  cfg.sig.declare_predicate("P", 1);
  cfg.sig.declare_predicate("Q", 1);
  cfg.sig.declare_predicate("R", 2);
  cfg.atoms = {Atom::named("a"), Atom::named("b")};
  cfg.shape.sugar = false;
  cfg.shape.quantifier_percent = 15;
  return cfg;
}

namespace detail {

class Generator {
public:
  Generator(const GeneratorConfig& cfg, Rng& rng) : cfg_(cfg), rng_(rng) {}

  Proof build(std::size_t rules) {
    if (rules == 0) return leaf();
    switch (pick(rng_, 8)) {
      case 0: return and_left(build(rules - 1));
      case 1: {
        std::size_t left = pick(rng_, rules);
        return and_right(build(left), build(rules - 1 - left));
      }
      case 2: return neg_left(build(rules - 1));
      case 3: return neg_right(build(rules - 1));
      case 4: return all_left(build(rules - 1));
      case 5: return all_right(build(rules - 1));
      case 6: return eq_left(build(rules - 1));
      default: return eq_right(build(rules - 1));
    }
  }

private:
  Formula formula() { return random_formula(cfg_.sig, cfg_.atoms, 2, rng_, cfg_.shape); }
  Term term() { return random_term(cfg_.sig, cfg_.atoms, 1, rng_); }

  template <class Range>
  auto choose(const Range& r) -> decltype(*r.begin()) {
    auto it = r.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(pick(rng_, r.size())));
    return *it;
  }

  static Proof step(Rule rule, Sequent conclusion, std::vector<Proof> premises) {
    Proof p;
    p.rule = rule;
    p.conclusion = std::move(conclusion);
    p.premises = std::move(premises);
    return p;
  }

  Proof leaf() {
    if (coin(rng_, 15)) {
      Sequent s{{Formula::bot()}, {}};
      if (coin(rng_, 50)) s.left.insert(formula());
      if (coin(rng_, 50)) s.right.insert(formula());
      return step(Rule::BotL, std::move(s), {});
    }
    Formula phi = formula();
    Sequent s{{phi}, {phi}};
    if (coin(rng_, 50)) s.left.insert(formula());
    if (coin(rng_, 50)) s.right.insert(formula());
    Proof p = step(Rule::Hyp, std::move(s), {});
    p.principal = phi;
    return p;
  }

  Proof and_left(Proof q) {
    const auto& L = q.conclusion.left;
    if (L.empty()) return q;
    Formula x = choose(L.items()), y = choose(L.items());
    Formula both = Formula::conj(x, y);
    Sequent s{L.without(x).without(y).with(both), q.conclusion.right};
    Proof p = step(Rule::AndL, std::move(s), {std::move(q)});
    p.principal = both;
    return p;
  }

  Proof and_right(Proof q1, Proof q2) {
    if (q1.conclusion.right.empty() || q2.conclusion.right.empty()) return q1;
    Formula x = choose(q1.conclusion.right.items());
    Formula y = choose(q2.conclusion.right.items());
    FormulaSet rest = q1.conclusion.right.without(x).unite(q2.conclusion.right.without(y));
    FormulaSet left = q1.conclusion.left.unite(q2.conclusion.left);
    Proof w1 = weaken(q1, q2.conclusion.left, q2.conclusion.right.without(y));
    Proof w2 = weaken(q2, q1.conclusion.left, q1.conclusion.right.without(x));
    Formula both = Formula::conj(x, y);
    Proof p = step(Rule::AndR, {left, rest.with(both)}, {std::move(w1), std::move(w2)});
    p.principal = both;
    return p;
  }

  Proof neg_left(Proof q) {
    const auto& R = q.conclusion.right;
    if (R.empty()) return q;
    Formula x = choose(R.items());
    Formula n = Formula::neg(x);
    Sequent s{q.conclusion.left.with(n), R.without(x)};
    Proof p = step(Rule::NegL, std::move(s), {std::move(q)});
    p.principal = n;
    return p;
  }

  Proof neg_right(Proof q) {
    const auto& L = q.conclusion.left;
    if (L.empty()) return q;
    Formula x = choose(L.items());
    Formula n = Formula::neg(x);
    Sequent s{L.without(x), q.conclusion.right.with(n)};
    Proof p = step(Rule::NegR, std::move(s), {std::move(q)});
    p.principal = n;
    return p;
  }

  Proof all_left(Proof q) {
    const auto& L = q.conclusion.left;
    if (L.empty()) return q;
    Formula x = choose(L.items());
    std::vector<Term> subs;
    collect_subterms(x, subs);
    Term r = subs.empty() || coin(rng_, 20) ? term() : choose(subs);
    auto abs = abstractions(x, r);
    Formula body = x;
    Atom binder = fresh(set_union(all_atoms(x), r.atoms()));
    if (!abs.empty()) {
      const auto& pickd = abs[pick(rng_, abs.size())];
      body = pickd.body;
      binder = pickd.atom;
    }
    Formula all = Formula::all(binder, body);
    Sequent s{L.without(x).with(all), q.conclusion.right};
    Proof p = step(Rule::AllL, std::move(s), {std::move(q)});
    p.principal = all;
    p.term = r;
    return p;
  }

  Proof all_right(Proof q) {
    const auto& R = q.conclusion.right;
    if (R.empty()) return q;
    Formula x = choose(R.items());
    AtomSet others = set_union(q.conclusion.left.free_atoms(), R.without(x).free_atoms());
    AtomSet candidates = set_minus(x.free_atoms(), others);
    Atom b = candidates.empty() ? fresh(set_union(q.conclusion.free_atoms(), all_atoms(x))) : choose(candidates);
    Formula all = Formula::all(b, x);
    Sequent s{q.conclusion.left, R.without(x).with(all)};
    Proof p = step(Rule::AllR, std::move(s), {std::move(q)});
    p.principal = all;
    p.atom = b;
    return p;
  }

  Proof eq_right(Proof q) {
    Term t = term();
    for (const auto& f : q.conclusion.left)
      if (f.kind() == FormulaKind::Eq && f.terms()[0] == f.terms()[1]) t = f.terms()[0];
    Formula refl = Formula::eq(t, t);
    Proof w = q.conclusion.left.contains(refl) ? q : weaken(q, {refl}, {});
    Sequent s{w.conclusion.left.without(refl), w.conclusion.right};
    Proof p = step(Rule::EqR, std::move(s), {std::move(w)});
    p.term = t;
    return p;
  }

  Proof eq_left(Proof q) {
    const auto& L = q.conclusion.left;
    if (L.empty()) return q;
    Formula x = choose(L.items());
    std::vector<Term> subs;
    collect_subterms(x, subs);
    if (subs.empty()) return q;
    Term r1 = choose(subs);
    Term r = term();
    auto abs = abstractions(x, r1, r.atoms());
    if (abs.empty()) return q;
    const auto& chosen = abs[pick(rng_, abs.size())];
    Formula eq = Formula::eq(r1, r);
    Proof w = weaken(q, {eq}, {});
    Formula before = subst(chosen.body, chosen.atom, r);
    Sequent s{w.conclusion.left.without(x).with(eq).with(before), w.conclusion.right};
    Proof p = step(Rule::EqL, std::move(s), {std::move(w)});
    p.term = r;
    p.term2 = r1;
    p.abstraction = chosen.body;
    p.atom = chosen.atom;
    return p;
  }

  const GeneratorConfig& cfg_;
  Rng& rng_;
};

}  // namespace detail

struct Derivation {
  Sequent sequent;
  Proof proof;
};

/// `n` derivable sequents with at most `cfg.max_rules` rule applications
/// above the leaves, each accepted by check_proof.
inline std::vector<Derivation> generate_derivable(std::uint64_t seed, std::size_t n,
                                                  const GeneratorConfig& cfg = default_generator_config()) {
  Rng rng(seed);
  std::vector<Derivation> out;
  detail::Generator gen(cfg, rng);
  while (out.size() < n) {
    Proof p = gen.build(pick(rng, cfg.max_rules + 1));
    if (!check_proof(p)) continue;
    out.push_back({p.conclusion, std::move(p)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interprovability.

enum class Equivalence { Equivalent, Distinct, Unknown };

inline const char* equivalence_name(Equivalence e) {
  switch (e) {
    case Equivalence::Equivalent: return "Equivalent";
    case Equivalence::Distinct: return "Distinct";
    case Equivalence::Unknown: return "Unknown";
  }
  return "?";
}

struct HerbrandResult {
  Equivalence verdict = Equivalence::Unknown;
  std::optional<Countermodel> witness;
  std::optional<Proof> forward, backward;
};

/// Equivalent when both directions are proved, Distinct when a finite model
/// separates them, Unknown otherwise.
inline HerbrandResult herbrand_equiv(const Formula& phi, const Formula& psi, const Signature& sig,
                                     const ProverBudget& budget = {}, std::size_t max_k = 2,
                                     std::size_t max_models = 20000) {
  HerbrandResult out;
  Sequent there{{phi}, {psi}}, back{{psi}, {phi}};
  auto p1 = prove(there, sig, budget);
  auto p2 = p1 ? prove(back, sig, budget) : ProveResult{};
  if (p1 && p2) {
    out.verdict = Equivalence::Equivalent;
    out.forward = std::move(p1.proof);
    out.backward = std::move(p2.proof);
    return out;
  }
  for (const auto& s : {there, back}) {
    auto cm = find_countermodel(s, sig, max_k, max_models);
    if (cm) {
      out.verdict = Equivalence::Distinct;
      out.witness = std::move(cm.found);
      return out;
    }
  }
  return out;
}

}  // namespace nomfol
