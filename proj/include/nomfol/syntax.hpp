#pragma once

// First-order terms and formulas with named binders.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nominal.hpp"

namespace nomfol {

struct Symbol {
  std::string name;
  std::size_t arity = 0;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Function and predicate symbols with arities. Names are unique across
/// both lists.
class Signature {
public:
  void declare_function(const std::string& name, std::size_t arity) { declare(functions_, name, arity); }
  void declare_predicate(const std::string& name, std::size_t arity) { declare(predicates_, name, arity); }

  std::optional<std::size_t> function_arity(const std::string& name) const { return lookup(functions_, name); }
  std::optional<std::size_t> predicate_arity(const std::string& name) const { return lookup(predicates_, name); }
  bool declares(const std::string& name) const {
    return function_arity(name).has_value() || predicate_arity(name).has_value();
  }

  const std::vector<Symbol>& functions() const { return functions_; }
  const std::vector<Symbol>& predicates() const { return predicates_; }

  std::vector<Symbol> constants() const {
    std::vector<Symbol> out;
    for (const auto& f : functions_)
      if (f.arity == 0) out.push_back(f);
    return out;
  }

  friend bool operator==(const Signature&, const Signature&) = default;

private:
  void declare(std::vector<Symbol>& list, const std::string& name, std::size_t arity) {
    auto& other = (&list == &functions_) ? predicates_ : functions_;
    for (const auto& s : other)
      if (s.name == name) throw std::invalid_argument("symbol '" + name + "' declared as both function and predicate");
    for (const auto& s : list) {
      if (s.name != name) continue;
      if (s.arity != arity)
        throw std::invalid_argument("symbol '" + name + "' redeclared with arity " + std::to_string(arity));
      return;
    }
    list.push_back({name, arity});
  }

  static std::optional<std::size_t> lookup(const std::vector<Symbol>& list, const std::string& name) {
    for (const auto& s : list)
      if (s.name == name) return s.arity;
    return std::nullopt;
  }

  std::vector<Symbol> functions_;
  std::vector<Symbol> predicates_;
};

class Term {
public:
  static Term var(Atom a) { return Term(std::make_shared<const Node>(Node{true, a, {}, {}, {a}})); }

  static Term app(std::string symbol, std::vector<Term> args) {
    AtomSet atoms;
    for (const auto& t : args) atoms.insert(t.atoms().begin(), t.atoms().end());
    return Term(std::make_shared<const Node>(Node{false, Atom(), std::move(symbol), std::move(args), std::move(atoms)}));
  }

  bool is_var() const { return node_->is_var; }
  Atom atom() const { return node_->atom; }
  const std::string& symbol() const { return node_->symbol; }
  const std::vector<Term>& args() const { return node_->args; }
  /// All atoms occurring in the term; terms have no binders.
  const AtomSet& atoms() const { return node_->atoms; }

  friend bool operator==(const Term& x, const Term& y) {
    if (x.node_ == y.node_) return true;
    if (x.is_var() != y.is_var()) return false;
    if (x.is_var()) return x.atom() == y.atom();
    return x.symbol() == y.symbol() && x.args() == y.args();
  }

private:
  struct Node {
    bool is_var;
    Atom atom;
    std::string symbol;
    std::vector<Term> args;
    AtomSet atoms;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

inline Term var(Atom a) { return Term::var(a); }

inline Term act(const Perm& pi, const Term& t) {
  if (pi.is_identity()) return t;
  if (t.is_var()) return Term::var(pi(t.atom()));
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& s : t.args()) args.push_back(act(pi, s));
  return Term::app(t.symbol(), std::move(args));
}

inline AtomSet support(const Term& t) { return t.atoms(); }
inline const AtomSet& free_atoms(const Term& t) { return t.atoms(); }

inline Term subst(const Term& t, Atom a, const Term& r) {
  if (!t.atoms().count(a)) return t;
  if (t.is_var()) return r;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& s : t.args()) args.push_back(subst(s, a, r));
  return Term::app(t.symbol(), std::move(args));
}

inline std::size_t depth(const Term& t) {
  std::size_t d = 0;
  for (const auto& s : t.args()) d = std::max(d, depth(s) + 1);
  return d;
}

inline void collect_subterms(const Term& t, std::vector<Term>& out) {
  if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  for (const auto& s : t.args()) collect_subterms(s, out);
}

enum class FormulaKind { Bot, Eq, Pred, And, Neg, All };

class Formula {
public:
  static Formula bot() {
    static const Formula b(std::make_shared<const Node>(Node{FormulaKind::Bot, {}, {}, {}, {}, {}, 1}));
    return b;
  }

  static Formula eq(Term lhs, Term rhs) {
    AtomSet fa = set_union(lhs.atoms(), rhs.atoms());
    return make(FormulaKind::Eq, {}, {}, {std::move(lhs), std::move(rhs)}, {}, std::move(fa));
  }

  static Formula pred(std::string symbol, std::vector<Term> args) {
    AtomSet fa;
    for (const auto& t : args) fa.insert(t.atoms().begin(), t.atoms().end());
    return make(FormulaKind::Pred, {}, std::move(symbol), std::move(args), {}, std::move(fa));
  }

  static Formula conj(Formula x, Formula y) {
    AtomSet fa = set_union(x.free_atoms(), y.free_atoms());
    return make(FormulaKind::And, {}, {}, {}, {std::move(x), std::move(y)}, std::move(fa));
  }

  static Formula neg(Formula x) {
    AtomSet fa = x.free_atoms();
    return make(FormulaKind::Neg, {}, {}, {}, {std::move(x)}, std::move(fa));
  }

  static Formula all(Atom binder, Formula body) {
    AtomSet fa = body.free_atoms();
    fa.erase(binder);
    return make(FormulaKind::All, binder, {}, {}, {std::move(body)}, std::move(fa));
  }

  // Classical abbreviations.
  static Formula top() { return neg(bot()); }
  static Formula disj(Formula x, Formula y) { return neg(conj(neg(std::move(x)), neg(std::move(y)))); }
  static Formula imp(Formula x, Formula y) { return disj(neg(std::move(x)), std::move(y)); }
  static Formula iff(const Formula& x, const Formula& y) { return conj(imp(x, y), imp(y, x)); }

  FormulaKind kind() const { return node_->kind; }
  Atom binder() const { return node_->binder; }
  const std::string& symbol() const { return node_->symbol; }
  const std::vector<Term>& terms() const { return node_->terms; }
  const Formula& left() const { return node_->children.at(0); }
  const Formula& right() const { return node_->children.at(1); }
  const Formula& body() const { return node_->children.at(0); }
  const AtomSet& free_atoms() const { return node_->free; }
  std::size_t size() const { return node_->size; }

  /// Raw structural equality, binder names included. Use alpha_eq for
  /// equality of formulas as syntax.
  bool same_tree(const Formula& other) const {
    if (node_ == other.node_) return true;
    if (kind() != other.kind() || size() != other.size()) return false;
    switch (kind()) {
      case FormulaKind::Bot: return true;
      case FormulaKind::Eq: return terms() == other.terms();
      case FormulaKind::Pred: return symbol() == other.symbol() && terms() == other.terms();
      case FormulaKind::And: return left().same_tree(other.left()) && right().same_tree(other.right());
      case FormulaKind::Neg: return body().same_tree(other.body());
      case FormulaKind::All: return binder() == other.binder() && body().same_tree(other.body());
    }
    return false;
  }

private:
  struct Node {
    FormulaKind kind;
    Atom binder;
    std::string symbol;
    std::vector<Term> terms;
    std::vector<Formula> children;
    AtomSet free;
    std::size_t size;
  };

  static Formula make(FormulaKind kind, Atom binder, std::string symbol, std::vector<Term> terms,
                      std::vector<Formula> children, AtomSet free) {
    std::size_t size = 1;
    for (const auto& c : children) size += c.size();
    return Formula(std::make_shared<const Node>(
        Node{kind, binder, std::move(symbol), std::move(terms), std::move(children), std::move(free), size}));
  }

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

inline const AtomSet& free_atoms(const Formula& phi) { return phi.free_atoms(); }
inline AtomSet support(const Formula& phi) { return phi.free_atoms(); }

/// Permutation action on raw syntax; renames bound and free atoms alike.
inline Formula act(const Perm& pi, const Formula& phi) {
  if (pi.is_identity()) return phi;
  auto terms = [&] {
    std::vector<Term> out;
    for (const auto& t : phi.terms()) out.push_back(act(pi, t));
    return out;
  };
  switch (phi.kind()) {
    case FormulaKind::Bot: return phi;
    case FormulaKind::Eq: return Formula::eq(act(pi, phi.terms()[0]), act(pi, phi.terms()[1]));
    case FormulaKind::Pred: return Formula::pred(phi.symbol(), terms());
    case FormulaKind::And: return Formula::conj(act(pi, phi.left()), act(pi, phi.right()));
    case FormulaKind::Neg: return Formula::neg(act(pi, phi.body()));
    case FormulaKind::All: return Formula::all(pi(phi.binder()), act(pi, phi.body()));
  }
  throw std::logic_error("unreachable formula kind");
}

inline AtomSet free_atoms(const std::vector<Formula>& phis) { return strict_support(phis); }

/// Capture-avoiding substitution phi[a := r]. A binder that would capture a
/// free atom of r is renamed to the lowest atom fresh for the body, r and a.
inline Formula subst(const Formula& phi, Atom a, const Term& r) {
  if (!phi.free_atoms().count(a)) return phi;
  switch (phi.kind()) {
    case FormulaKind::Bot: return phi;
    case FormulaKind::Eq: return Formula::eq(subst(phi.terms()[0], a, r), subst(phi.terms()[1], a, r));
    case FormulaKind::Pred: {
      std::vector<Term> args;
      for (const auto& t : phi.terms()) args.push_back(subst(t, a, r));
      return Formula::pred(phi.symbol(), std::move(args));
    }
    case FormulaKind::And: return Formula::conj(subst(phi.left(), a, r), subst(phi.right(), a, r));
    case FormulaKind::Neg: return Formula::neg(subst(phi.body(), a, r));
    case FormulaKind::All: {
      Atom b = phi.binder();
      if (!r.atoms().count(b)) return Formula::all(b, subst(phi.body(), a, r));
      AtomSet avoid = set_union(phi.body().free_atoms(), r.atoms());
      avoid.insert(a);
      Atom c = fresh(avoid);
      return Formula::all(c, subst(act(swap(c, b), phi.body()), a, r));
    }
  }
  throw std::logic_error("unreachable formula kind");
}

/// Alpha-equivalence: binders are swapped to a common fresh atom and the
/// bodies compared.
inline bool alpha_eq(const Formula& x, const Formula& y) {
  if (x.kind() != y.kind() || x.size() != y.size()) return false;
  switch (x.kind()) {
    case FormulaKind::Bot: return true;
    case FormulaKind::Eq: return x.terms() == y.terms();
    case FormulaKind::Pred: return x.symbol() == y.symbol() && x.terms() == y.terms();
    case FormulaKind::And: return alpha_eq(x.left(), y.left()) && alpha_eq(x.right(), y.right());
    case FormulaKind::Neg: return alpha_eq(x.body(), y.body());
    case FormulaKind::All: {
      if (x.binder() == y.binder()) return alpha_eq(x.body(), y.body());
      if (x.free_atoms() != y.free_atoms()) return false;
      AtomSet avoid = set_union(x.body().free_atoms(), y.body().free_atoms());
      avoid.insert(x.binder());
      avoid.insert(y.binder());
      Atom c = fresh(avoid);
      return alpha_eq(act(swap(c, x.binder()), x.body()), act(swap(c, y.binder()), y.body()));
    }
  }
  return false;
}

inline std::size_t depth(const Formula& phi) {
  switch (phi.kind()) {
    case FormulaKind::Bot:
    case FormulaKind::Eq:
    case FormulaKind::Pred: return 0;
    case FormulaKind::And: return 1 + std::max(depth(phi.left()), depth(phi.right()));
    case FormulaKind::Neg:
    case FormulaKind::All: return 1 + depth(phi.body());
  }
  return 0;
}

/// Every term occurring in phi, deduplicated, in left-to-right preorder.
inline void collect_subterms(const Formula& phi, std::vector<Term>& out) {
  for (const auto& t : phi.terms()) collect_subterms(t, out);
  if (phi.kind() == FormulaKind::And) {
    collect_subterms(phi.left(), out);
    collect_subterms(phi.right(), out);
  } else if (phi.kind() == FormulaKind::Neg || phi.kind() == FormulaKind::All) {
    collect_subterms(phi.body(), out);
  }
}

/// A string that is equal for two formulas iff they are alpha-equivalent.
/// Bound atoms are printed by binding depth, free atoms by id.
inline std::string alpha_key(const Formula& phi) {
  struct Keyer {
    std::map<Atom, std::vector<std::size_t>> bound;
    std::size_t level = 0;
    std::string out;

    void atom(Atom a) {
      auto it = bound.find(a);
      if (it != bound.end() && !it->second.empty()) {
        out += '#';
        out += std::to_string(it->second.back());
      } else {
        out += '$';
        out += std::to_string(a.id());
      }
    }
    void term(const Term& t) {
      if (t.is_var()) return atom(t.atom());
      out += t.symbol();
      out += '(';
      for (const auto& s : t.args()) {
        term(s);
        out += ',';
      }
      out += ')';
    }
    void formula(const Formula& f) {
      switch (f.kind()) {
        case FormulaKind::Bot: out += 'B'; return;
        case FormulaKind::Eq:
          out += "E(";
          term(f.terms()[0]);
          out += ',';
          term(f.terms()[1]);
          out += ')';
          return;
        case FormulaKind::Pred:
          out += "P:";
          out += f.symbol();
          out += '(';
          for (const auto& t : f.terms()) {
            term(t);
            out += ',';
          }
          out += ')';
          return;
        case FormulaKind::And:
          out += "A(";
          formula(f.left());
          out += ',';
          formula(f.right());
          out += ')';
          return;
        case FormulaKind::Neg:
          out += "N(";
          formula(f.body());
          out += ')';
          return;
        case FormulaKind::All:
          out += "Q(";
          bound[f.binder()].push_back(level++);
          formula(f.body());
          bound[f.binder()].pop_back();
          --level;
          out += ')';
          return;
      }
    }
  } keyer;
  keyer.formula(phi);
  return std::move(keyer.out);
}

}  // namespace nomfol
