#pragma once

// Finite ordinary models, their brute-force semantics, and the lifted algebra
// of finite-dependency functions from valuations.

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "foleq.hpp"
#include "parser.hpp"

namespace nomfol {

using Value = std::uint32_t;

/// A valuation: finitely many overrides over a default value.
class Valuation {
public:
  Valuation() = default;
  explicit Valuation(Value fallback) : default_(fallback) {}
  Valuation(std::map<Atom, Value> overrides, Value fallback) : overrides_(std::move(overrides)), default_(fallback) {}

  Value operator()(Atom a) const {
    auto it = overrides_.find(a);
    return it == overrides_.end() ? default_ : it->second;
  }

  Valuation with(Atom a, Value v) const {
    Valuation out = *this;
    out.overrides_[a] = v;
    return out;
  }

  const std::map<Atom, Value>& overrides() const { return overrides_; }
  Value fallback() const { return default_; }

  friend Valuation act(const Perm& pi, const Valuation& s) {
    std::map<Atom, Value> moved;
    for (auto [a, v] : s.overrides_) moved.emplace(pi(a), v);
    return {std::move(moved), s.default_};
  }

  std::string show() const {
    std::string out = "{";
    for (auto [a, v] : overrides_) out += a.name() + "->" + std::to_string(v) + ", ";
    return out + "_->" + std::to_string(default_) + "}";
  }

private:
  std::map<Atom, Value> overrides_;
  Value default_ = 0;
};

inline constexpr std::size_t kDefaultDepWidth = 6;

/// A function of valuations that reads finitely many atoms. Stored
/// canonically: deps sorted by atom and each one actually read, so deps is
/// the support. The table is row-major with the first dep most significant.
class TableFun {
public:
  TableFun() = default;

  static TableFun constant(std::size_t k, Value v) { return TableFun(k, {}, {v}); }

  static TableFun projection(std::size_t k, Atom a) {
    std::vector<Value> table(k);
    for (std::size_t i = 0; i < k; ++i) table[i] = static_cast<Value>(i);
    return TableFun(k, {a}, std::move(table)).canonical();
  }

  /// Builds the canonical function that computes `f(look)` where `look(a)`
  /// returns the value at a dep atom. `f` must read no atom outside `deps`.
  template <class F>
  static TableFun tabulate(std::size_t k, const AtomSet& deps, F&& f, std::size_t width = kDefaultDepWidth) {
    if (deps.size() > width)
      throw std::length_error("table over " + std::to_string(deps.size()) + " atoms exceeds the width limit " +
                              std::to_string(width));
    std::vector<Atom> order(deps.begin(), deps.end());
    std::size_t rows = 1;
    for (std::size_t i = 0; i < order.size(); ++i) rows *= k;
    std::vector<Value> table(rows);
    std::vector<Value> row(order.size(), 0);
    auto look = [&](Atom a) -> Value {
      auto it = std::lower_bound(order.begin(), order.end(), a);
      if (it == order.end() || *it != a) throw std::logic_error("table read outside its dependencies: " + a.name());
      return row[static_cast<std::size_t>(it - order.begin())];
    };
    for (std::size_t r = 0; r < rows; ++r) {
      std::size_t rest = r;
      for (std::size_t i = order.size(); i-- > 0;) {
        row[i] = static_cast<Value>(rest % k);
        rest /= k;
      }
      table[r] = f(look);
    }
    return TableFun(k, std::move(order), std::move(table)).canonical();
  }

  /// Raw construction from deps in the given order; the result is sorted
  /// and canonicalised.
  static TableFun from_table(std::size_t k, const std::vector<Atom>& deps, const std::vector<Value>& table) {
    std::size_t rows = 1;
    for (std::size_t i = 0; i < deps.size(); ++i) rows *= k;
    if (table.size() != rows) throw std::invalid_argument("table has wrong number of rows");
    AtomSet set(deps.begin(), deps.end());
    if (set.size() != deps.size()) throw std::invalid_argument("repeated dependency atom");
    TableFun raw(k, deps, table);
    return tabulate(k, set, [&](auto&& look) { return raw.eval(look); }, deps.size());
  }

  std::size_t k() const { return k_; }
  const std::vector<Atom>& deps() const { return deps_; }
  const std::vector<Value>& table() const { return table_; }
  bool is_constant() const { return deps_.empty(); }

  template <class Look>
  Value eval(Look&& look) const {
    std::size_t idx = 0;
    for (Atom d : deps_) idx = idx * k_ + look(d);
    return table_[idx];
  }

  Value apply(const Valuation& s) const { return eval(s); }

  /// Drops every coordinate the table does not depend on. Idempotent.
  TableFun canonical() const {
    TableFun f = *this;
    for (std::size_t i = f.deps_.size(); i-- > 0;)
      if (!f.reads(i)) f = f.drop(i);
    return f;
  }

  friend bool operator==(const TableFun&, const TableFun&) = default;

  std::string show() const {
    std::string out = "deps: [";
    for (std::size_t i = 0; i < deps_.size(); ++i) out += (i ? " " : "") + deps_[i].name();
    out += "]  table: [";
    for (std::size_t i = 0; i < table_.size(); ++i) out += (i ? " " : "") + std::to_string(table_[i]);
    return out + "]";
  }

private:
  TableFun(std::size_t k, std::vector<Atom> deps, std::vector<Value> table)
      : k_(k), deps_(std::move(deps)), table_(std::move(table)) {}

  std::size_t stride(std::size_t i) const {
    std::size_t s = 1;
    for (std::size_t j = i + 1; j < deps_.size(); ++j) s *= k_;
    return s;
  }

  bool reads(std::size_t i) const {
    std::size_t st = stride(i);
    for (std::size_t r = 0; r < table_.size(); ++r) {
      std::size_t digit = (r / st) % k_;
      if (digit == 0) continue;
      if (table_[r] != table_[r - digit * st]) return true;
    }
    return false;
  }

  TableFun drop(std::size_t i) const {
    std::size_t st = stride(i);
    std::vector<Value> table;
    table.reserve(table_.size() / k_);
    for (std::size_t r = 0; r < table_.size(); ++r)
      if ((r / st) % k_ == 0) table.push_back(table_[r]);
    std::vector<Atom> deps = deps_;
    deps.erase(deps.begin() + static_cast<std::ptrdiff_t>(i));
    return TableFun(k_, std::move(deps), std::move(table));
  }

  std::size_t k_ = 1;
  std::vector<Atom> deps_;
  std::vector<Value> table_{0};
};

inline TableFun act(const Perm& pi, const TableFun& f) {
  if (pi.is_identity()) return f;
  std::vector<Atom> moved;
  for (Atom d : f.deps()) moved.push_back(pi(d));
  return TableFun::from_table(f.k(), moved, f.table());
}

inline AtomSet support(const TableFun& f) { return AtomSet(f.deps().begin(), f.deps().end()); }

// Operations on tables; truth values are 0 and 1.

inline AtomSet deps_of(const TableFun& f) { return support(f); }

/// f[a := u](s) = f(s[a -> u(s)]).
inline TableFun tf_subst(const TableFun& f, Atom a, const TableFun& u, std::size_t width = kDefaultDepWidth) {
  AtomSet fd = deps_of(f);
  if (!fd.count(a)) return f;
  fd.erase(a);
  AtomSet all = set_union(fd, deps_of(u));
  return TableFun::tabulate(
      f.k(), all,
      [&](auto&& look) {
        Value ua = u.eval(look);
        return f.eval([&](Atom d) { return d == a ? ua : look(d); });
      },
      width);
}

template <class Op>
TableFun tf_zip(const TableFun& f, const TableFun& g, Op op, std::size_t width = kDefaultDepWidth) {
  return TableFun::tabulate(
      f.k(), set_union(deps_of(f), deps_of(g)), [&](auto&& look) { return op(f.eval(look), g.eval(look)); }, width);
}

inline TableFun tf_meet(const TableFun& f, const TableFun& g) {
  return tf_zip(f, g, [](Value x, Value y) { return std::min(x, y); });
}

inline TableFun tf_neg(const TableFun& f) {
  return TableFun::tabulate(f.k(), deps_of(f), [&](auto&& look) { return Value(1 - f.eval(look)); });
}

inline TableFun tf_eq(const TableFun& u, const TableFun& v) {
  return tf_zip(u, v, [](Value x, Value y) { return Value(x == y); });
}

/// Meet over all k values of the a coordinate.
inline TableFun tf_freshmeet(Atom a, const TableFun& f) {
  AtomSet rest = deps_of(f);
  if (!rest.erase(a)) return f;
  return TableFun::tabulate(f.k(), rest, [&](auto&& look) {
    Value out = 1;
    for (Value x = 0; x < f.k(); ++x) out = std::min(out, f.eval([&](Atom d) { return d == a ? x : look(d); }));
    return out;
  });
}

/// Termlike side: finite-dependency functions into the domain 0..k-1.
struct TarskiTerms {
  using element = TableFun;
  using termlike = TableFun;

  std::size_t k = 2;

  const TarskiTerms& terms() const { return *this; }
  TableFun atm(Atom a) const { return TableFun::projection(k, a); }
  TableFun subst(const TableFun& x, Atom a, const TableFun& u) const { return tf_subst(x, a, u); }
  TableFun act(const Perm& pi, const TableFun& x) const { return nomfol::act(pi, x); }
  AtomSet support(const TableFun& x) const { return nomfol::support(x); }
  bool equal(const TableFun& x, const TableFun& y) const { return x == y; }
  std::string show(const TableFun& x) const { return x.show(); }
};

/// Truth side: finite-dependency functions into {0, 1}, ordered pointwise.
struct TarskiLift {
  using element = TableFun;
  using termlike = TableFun;

  explicit TarskiLift(std::size_t domain = 2) : term_algebra{domain} {}

  std::size_t k() const { return term_algebra.k; }
  const TarskiTerms& terms() const { return term_algebra; }
  TableFun top() const { return TableFun::constant(k(), 1); }
  TableFun meet(const TableFun& x, const TableFun& y) const { return tf_meet(x, y); }
  TableFun neg(const TableFun& x) const { return tf_neg(x); }
  TableFun freshmeet(Atom a, const TableFun& x) const { return tf_freshmeet(a, x); }
  TableFun eq(const TableFun& u, const TableFun& v) const { return tf_eq(u, v); }
  TableFun subst(const TableFun& x, Atom a, const TableFun& u) const { return tf_subst(x, a, u); }
  TableFun act(const Perm& pi, const TableFun& x) const { return nomfol::act(pi, x); }
  AtomSet support(const TableFun& x) const { return nomfol::support(x); }
  bool equal(const TableFun& x, const TableFun& y) const { return x == y; }
  std::string show(const TableFun& x) const { return x.show(); }

  TarskiTerms term_algebra;
};

// ---------------------------------------------------------------------------
// Ordinary models.

/// Domain 0..k-1 with total tables; argument tuples are indexed row-major,
/// first argument most significant.
struct OrdinaryModel {
  std::size_t k = 1;
  Signature sig;
  std::map<std::string, std::vector<Value>> funs;
  std::map<std::string, std::vector<Value>> preds;

  static std::size_t rows(std::size_t k, std::size_t arity) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < arity; ++i) n *= k;
    return n;
  }

  /// Throws unless every declared symbol has a total table of in-range values.
  void validate() const {
    if (k < 1) throw std::invalid_argument("model domain must be non-empty");
    for (const auto& f : sig.functions()) {
      auto it = funs.find(f.name);
      if (it == funs.end()) throw std::invalid_argument("no table for function " + f.name);
      if (it->second.size() != rows(k, f.arity))
        throw std::invalid_argument("function " + f.name + " needs " + std::to_string(rows(k, f.arity)) + " rows");
      for (Value v : it->second)
        if (v >= k) throw std::invalid_argument("function " + f.name + " has value outside the domain");
    }
    for (const auto& p : sig.predicates()) {
      auto it = preds.find(p.name);
      if (it == preds.end()) throw std::invalid_argument("no table for predicate " + p.name);
      if (it->second.size() != rows(k, p.arity))
        throw std::invalid_argument("predicate " + p.name + " needs " + std::to_string(rows(k, p.arity)) + " rows");
      for (Value v : it->second)
        if (v > 1) throw std::invalid_argument("predicate " + p.name + " has value other than 0/1");
    }
  }

  Value lookup(const std::vector<Value>& table, const std::vector<Value>& args) const {
    std::size_t idx = 0;
    for (Value v : args) idx = idx * k + v;
    return table.at(idx);
  }
};

inline Value standard_eval_term(const Term& t, const OrdinaryModel& N, const Valuation& s) {
  if (t.is_var()) {
    Value v = s(t.atom());
    if (v >= N.k) throw std::invalid_argument("valuation value outside the domain");
    return v;
  }
  std::vector<Value> args;
  for (const auto& u : t.args()) args.push_back(standard_eval_term(u, N, s));
  auto it = N.funs.find(t.symbol());
  if (it == N.funs.end()) throw std::invalid_argument("model has no function " + t.symbol());
  return N.lookup(it->second, args);
}

/// Textbook semantics; the quantifier case enumerates the domain.
inline bool standard_eval(const Formula& phi, const OrdinaryModel& N, const Valuation& s) {
  switch (phi.kind()) {
    case FormulaKind::Bot: return false;
    case FormulaKind::Eq: return standard_eval_term(phi.terms()[0], N, s) == standard_eval_term(phi.terms()[1], N, s);
    case FormulaKind::Pred: {
      std::vector<Value> args;
      for (const auto& u : phi.terms()) args.push_back(standard_eval_term(u, N, s));
      auto it = N.preds.find(phi.symbol());
      if (it == N.preds.end()) throw std::invalid_argument("model has no predicate " + phi.symbol());
      return N.lookup(it->second, args) != 0;
    }
    case FormulaKind::And: return standard_eval(phi.left(), N, s) && standard_eval(phi.right(), N, s);
    case FormulaKind::Neg: return !standard_eval(phi.body(), N, s);
    case FormulaKind::All:
      for (Value x = 0; x < N.k; ++x)
        if (!standard_eval(phi.body(), N, s.with(phi.binder(), x))) return false;
      return true;
  }
  throw std::logic_error("unreachable formula kind");
}

/// Symbol interpretations read off the model's tables at distinct atoms.
inline Interpretation<TarskiLift> lift_interpretation(const OrdinaryModel& N) {
  Interpretation<TarskiLift> I{TarskiLift(N.k), {}, {}};
  auto table_at = [k = N.k](const std::vector<Value>& table, const std::vector<Atom>& atoms) {
    return TableFun::from_table(k, atoms, table);
  };
  I.fun = [funs = N.funs, table_at](const std::string& name, const std::vector<Atom>& atoms) {
    auto it = funs.find(name);
    if (it == funs.end()) throw std::invalid_argument("model has no function " + name);
    return table_at(it->second, atoms);
  };
  I.pred = [preds = N.preds, table_at](const std::string& name, const std::vector<Atom>& atoms) {
    auto it = preds.find(name);
    if (it == preds.end()) throw std::invalid_argument("model has no predicate " + name);
    return table_at(it->second, atoms);
  };
  return I;
}

/// Every valuation of `atoms` into 0..k-1, crossed with each default value.
inline std::vector<Valuation> enumerate_valuations(const AtomSet& atoms, std::size_t k) {
  std::vector<Atom> order(atoms.begin(), atoms.end());
  std::vector<Valuation> out;
  std::size_t rows = OrdinaryModel::rows(k, order.size());
  for (Value dflt = 0; dflt < k; ++dflt) {
    for (std::size_t r = 0; r < rows; ++r) {
      std::map<Atom, Value> m;
      std::size_t rest = r;
      for (std::size_t i = order.size(); i-- > 0;) {
        m[order[i]] = static_cast<Value>(rest % k);
        rest /= k;
      }
      out.emplace_back(std::move(m), dflt);
    }
  }
  return out;
}

/// The lifted denotation of phi agrees with the textbook semantics at every
/// enumerated valuation of its free atoms.
inline bool agreement_check(const Formula& phi, const OrdinaryModel& N) {
  TableFun lifted = interpret(phi, lift_interpretation(N));
  for (const auto& s : enumerate_valuations(phi.free_atoms(), N.k))
    if ((lifted.apply(s) != 0) != standard_eval(phi, N, s)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Model files.

/// Lines: `domain k`, `fun name : v ...`, `pred name : 0/1 ...`, `#` comments.
/// Values for one symbol may span several lines; they are concatenated in
/// order. Symbols not in `sig` are declared with the arity implied by the
/// table length.
inline OrdinaryModel parse_model(std::string_view text, const Signature& sig) {
  OrdinaryModel N;
  N.sig = sig;
  bool have_domain = false;
  std::map<std::string, std::vector<Value>> fun_rows, pred_rows;
  std::vector<std::string> fun_order, pred_order;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("model line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string kind;
    if (!(words >> kind)) continue;
    if (kind == "domain") {
      long long k = 0;
      if (!(words >> k) || k < 1) fail("domain needs a positive size");
      N.k = static_cast<std::size_t>(k);
      have_domain = true;
      continue;
    }
    if (kind != "fun" && kind != "pred") fail("unknown directive '" + kind + "'");
    std::string name, colon;
    if (!(words >> name >> colon) || colon != ":") fail("expected '" + kind + " name : values'");
    auto& rows = kind == "fun" ? fun_rows : pred_rows;
    auto& order = kind == "fun" ? fun_order : pred_order;
    if (!rows.count(name)) order.push_back(name);
    auto& vals = rows[name];
    std::string tok;
    while (words >> tok) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size() || v < 0) fail("bad value '" + tok + "'");
        vals.push_back(static_cast<Value>(v));
      } catch (const std::logic_error&) {
        fail("bad value '" + tok + "'");
      }
    }
  }
  if (!have_domain) throw std::invalid_argument("model has no domain line");
  auto arity_of = [&](const std::string& name, std::size_t count) -> std::size_t {
    for (std::size_t n = 0; n <= 8; ++n)
      if (OrdinaryModel::rows(N.k, n) == count) return n;
    throw std::invalid_argument("table for " + name + " has " + std::to_string(count) + " rows, not a power of " +
                                std::to_string(N.k));
  };
  for (const auto& name : fun_order) {
    auto declared = N.sig.function_arity(name);
    if (!declared) N.sig.declare_function(name, N.k == 1 ? 0 : arity_of(name, fun_rows[name].size()));
    N.funs[name] = fun_rows[name];
  }
  for (const auto& name : pred_order) {
    auto declared = N.sig.predicate_arity(name);
    if (!declared) N.sig.declare_predicate(name, N.k == 1 ? 0 : arity_of(name, pred_rows[name].size()));
    N.preds[name] = pred_rows[name];
  }
  N.validate();
  return N;
}

/// Inverse of parse_model: one line per input row.
inline std::string print_model(const OrdinaryModel& N) {
  std::ostringstream out;
  out << "domain " << N.k << '\n';
  auto rows = [&](const char* kind, const std::vector<Symbol>& syms, const auto& tables) {
    for (const auto& s : syms) {
      auto it = tables.find(s.name);
      if (it == tables.end()) continue;
      for (Value v : it->second) out << kind << ' ' << s.name << " : " << v << '\n';
    }
  };
  rows("fun", N.sig.functions(), N.funs);
  rows("pred", N.sig.predicates(), N.preds);
  return out.str();
}

// ---------------------------------------------------------------------------
// Random data.

inline OrdinaryModel random_model(const Signature& sig, std::size_t k, Rng& rng) {
  OrdinaryModel N;
  N.k = k;
  N.sig = sig;
  for (const auto& f : sig.functions()) {
    auto& t = N.funs[f.name];
    for (std::size_t i = 0; i < OrdinaryModel::rows(k, f.arity); ++i) t.push_back(static_cast<Value>(pick(rng, k)));
  }
  for (const auto& p : sig.predicates()) {
    auto& t = N.preds[p.name];
    for (std::size_t i = 0; i < OrdinaryModel::rows(k, p.arity); ++i) t.push_back(static_cast<Value>(pick(rng, 2)));
  }
  return N;
}

/// A random table over up to `max_deps` atoms drawn from `atoms`, with
/// values below `values`.
inline TableFun random_table_fun(std::size_t k, Value values, const std::vector<Atom>& atoms, std::size_t max_deps,
                                 Rng& rng) {
  AtomSet deps;
  std::size_t n = pick(rng, max_deps + 1);
  for (std::size_t i = 0; i < n; ++i) deps.insert(atoms[pick(rng, atoms.size())]);
  std::vector<Atom> order(deps.begin(), deps.end());
  std::vector<Value> table(OrdinaryModel::rows(k, order.size()));
  for (auto& v : table) v = static_cast<Value>(pick(rng, values));
  return TableFun::from_table(k, order, table);
}

}  // namespace nomfol
