#pragma once

// Sequents, proof trees for the first-order rules with equality, a proof
// checker, and an s-expression format for proofs.

#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "parser.hpp"
#include "syntax.hpp"

namespace nomfol {

/// Finite set of formulas up to alpha-equivalence, kept in insertion order.
class FormulaSet {
public:
  FormulaSet() = default;
  FormulaSet(std::initializer_list<Formula> items) {
    for (const auto& f : items) insert(f);
  }
  explicit FormulaSet(const std::vector<Formula>& items) {
    for (const auto& f : items) insert(f);
  }

  bool contains(const Formula& f) const {
    for (const auto& g : items_)
      if (alpha_eq(f, g)) return true;
    return false;
  }

  bool insert(const Formula& f) {
    if (contains(f)) return false;
    items_.push_back(f);
    return true;
  }

  FormulaSet with(const Formula& f) const {
    FormulaSet out = *this;
    out.insert(f);
    return out;
  }

  FormulaSet without(const Formula& f) const {
    FormulaSet out;
    for (const auto& g : items_)
      if (!alpha_eq(f, g)) out.items_.push_back(g);
    return out;
  }

  FormulaSet unite(const FormulaSet& other) const {
    FormulaSet out = *this;
    for (const auto& f : other.items_) out.insert(f);
    return out;
  }

  const std::vector<Formula>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  AtomSet free_atoms() const { return strict_support(items_); }

  friend bool operator==(const FormulaSet& x, const FormulaSet& y) {
    if (x.size() != y.size()) return false;
    for (const auto& f : x.items_)
      if (!y.contains(f)) return false;
    return true;
  }

  /// Order-independent key, equal exactly for equal sets.
  std::string key() const {
    std::vector<std::string> keys;
    for (const auto& f : items_) keys.push_back(alpha_key(f));
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (auto& k : keys) out += k + ";";
    return out;
  }

private:
  std::vector<Formula> items_;
};

struct Sequent {
  FormulaSet left;
  FormulaSet right;

  AtomSet free_atoms() const { return set_union(left.free_atoms(), right.free_atoms()); }
  std::string key() const { return left.key() + "|-" + right.key(); }
  std::string show() const { return pretty(left.items(), right.items()); }
  friend bool operator==(const Sequent&, const Sequent&) = default;
};

inline Sequent parse_sequent_text(std::string_view text, Signature& sig, bool declare_on_use = true) {
  SequentText parsed = parse_sequent(text, sig, declare_on_use);
  return {FormulaSet(parsed.left), FormulaSet(parsed.right)};
}

enum class Rule { Hyp, BotL, EqR, AndL, AndR, EqL, NegL, NegR, AllL, AllR };

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Hyp: return "Hyp";
    case Rule::BotL: return "BotL";
    case Rule::EqR: return "EqR";
    case Rule::AndL: return "AndL";
    case Rule::AndR: return "AndR";
    case Rule::EqL: return "EqL";
    case Rule::NegL: return "NegL";
    case Rule::NegR: return "NegR";
    case Rule::AllL: return "AllL";
    case Rule::AllR: return "AllR";
  }
  return "?";
}

inline std::optional<Rule> rule_from_name(std::string_view name) {
  for (Rule r : {Rule::Hyp, Rule::BotL, Rule::EqR, Rule::AndL, Rule::AndR, Rule::EqL, Rule::NegL, Rule::NegR,
                 Rule::AllL, Rule::AllR})
    if (name == rule_name(r)) return r;
  return std::nullopt;
}

inline std::size_t rule_arity(Rule r) {
  switch (r) {
    case Rule::Hyp:
    case Rule::BotL: return 0;
    case Rule::AndR: return 2;
    default: return 1;
  }
}

/// A derivation node. Witnesses by rule:
///   AndL AndR NegL NegR AllL AllR: `principal`;
///   AllL: `term` (the instance); AllR: `atom` (the eigen-atom);
///   EqR: `term` (the r of r = r);
///   EqL: `term2` = r', `term` = r, `abstraction` = phi, `atom` = a, for the
///        step from  Phi, r'=r, phi[a:=r'] |- Psi  to  Phi, r'=r, phi[a:=r] |- Psi.
struct Proof {
  Rule rule = Rule::Hyp;
  Sequent conclusion;
  std::optional<Formula> principal;
  std::optional<Term> term;
  std::optional<Term> term2;
  std::optional<Formula> abstraction;
  std::optional<Atom> atom;
  std::vector<Proof> premises;

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& p : premises) n += p.size();
    return n;
  }

  std::size_t height() const {
    std::size_t h = 0;
    for (const auto& p : premises) h = std::max(h, p.height());
    return h + 1;
  }
};

struct CheckResult {
  bool ok = true;
  std::string rule;
  std::string sequent;
  std::string reason;

  explicit operator bool() const { return ok; }
  std::string show() const { return ok ? "ok" : "node " + rule + " [" + sequent + "]: " + reason; }
};

namespace detail {

/// The premise side must be the conclusion side, with or without the
/// principal formula, plus the listed additions.
inline bool side_matches(const FormulaSet& premise, const FormulaSet& conclusion, const std::optional<Formula>& principal,
                         const std::vector<Formula>& added) {
  FormulaSet with = conclusion;
  for (const auto& f : added) with.insert(f);
  if (premise == with) return true;
  if (!principal) return false;
  FormulaSet without = conclusion.without(*principal);
  for (const auto& f : added) without.insert(f);
  return premise == without;
}

inline CheckResult check_node(const Proof& p) {
  CheckResult bad{false, rule_name(p.rule), p.conclusion.show(), {}};
  auto fail = [&](std::string why) {
    bad.reason = std::move(why);
    return bad;
  };
  const auto& L = p.conclusion.left;
  const auto& R = p.conclusion.right;
  if (p.premises.size() != rule_arity(p.rule))
    return fail("expected " + std::to_string(rule_arity(p.rule)) + " premises, found " +
                std::to_string(p.premises.size()));

  auto need_principal = [&](FormulaKind kind, const FormulaSet& side, const char* where) -> std::optional<std::string> {
    if (!p.principal) return "missing principal formula";
    if (p.principal->kind() != kind) return "principal formula has the wrong shape";
    if (!side.contains(*p.principal)) return std::string("principal formula not on the ") + where;
    return std::nullopt;
  };
  auto premise_is = [&](std::size_t i, const std::vector<Formula>& add_left, const std::vector<Formula>& add_right,
                        bool principal_left) -> std::optional<std::string> {
    const Sequent& s = p.premises[i].conclusion;
    std::optional<Formula> none;
    bool left_ok = side_matches(s.left, L, principal_left ? p.principal : none, add_left);
    bool right_ok = side_matches(s.right, R, principal_left ? none : p.principal, add_right);
    if (!left_ok || !right_ok) return "premise " + std::to_string(i + 1) + " does not match the rule";
    return std::nullopt;
  };

  switch (p.rule) {
    case Rule::Hyp:
      for (const auto& f : L)
        if (R.contains(f)) return {};
      return fail("no formula occurs on both sides");
    case Rule::BotL:
      if (L.contains(Formula::bot())) return {};
      return fail("bottom is not a hypothesis");
    case Rule::EqR: {
      if (!p.term) return fail("missing term witness");
      Formula refl = Formula::eq(*p.term, *p.term);
      const Sequent& s = p.premises[0].conclusion;
      if (s.right == R && (s.left == L.with(refl))) return {};
      return fail("premise must add " + pretty(refl) + " to the hypotheses");
    }
    case Rule::AndL: {
      if (auto e = need_principal(FormulaKind::And, L, "left")) return fail(*e);
      if (auto e = premise_is(0, {p.principal->left(), p.principal->right()}, {}, true)) return fail(*e);
      return {};
    }
    case Rule::AndR: {
      if (auto e = need_principal(FormulaKind::And, R, "right")) return fail(*e);
      if (auto e = premise_is(0, {}, {p.principal->left()}, false)) return fail(*e);
      if (auto e = premise_is(1, {}, {p.principal->right()}, false)) return fail(*e);
      return {};
    }
    case Rule::NegL: {
      if (auto e = need_principal(FormulaKind::Neg, L, "left")) return fail(*e);
      if (auto e = premise_is(0, {}, {p.principal->body()}, true)) return fail(*e);
      return {};
    }
    case Rule::NegR: {
      if (auto e = need_principal(FormulaKind::Neg, R, "right")) return fail(*e);
      if (auto e = premise_is(0, {p.principal->body()}, {}, false)) return fail(*e);
      return {};
    }
    case Rule::AllL: {
      if (auto e = need_principal(FormulaKind::All, L, "left")) return fail(*e);
      if (!p.term) return fail("missing instance term");
      Formula inst = subst(p.principal->body(), p.principal->binder(), *p.term);
      if (auto e = premise_is(0, {inst}, {}, true)) return fail(*e);
      return {};
    }
    case Rule::AllR: {
      if (auto e = need_principal(FormulaKind::All, R, "right")) return fail(*e);
      if (!p.atom) return fail("missing eigen-atom");
      if (p.conclusion.free_atoms().count(*p.atom))
        return fail("eigen-atom " + p.atom->name() + " is free in the conclusion");
      Formula inst = subst(p.principal->body(), p.principal->binder(), var(*p.atom));
      if (auto e = premise_is(0, {}, {inst}, false)) return fail(*e);
      return {};
    }
    case Rule::EqL: {
      if (!p.term || !p.term2 || !p.abstraction || !p.atom) return fail("missing equality witnesses");
      Formula eq = Formula::eq(*p.term2, *p.term);
      if (!L.contains(eq)) return fail("equation " + pretty(eq) + " is not a hypothesis");
      Formula before = subst(*p.abstraction, *p.atom, *p.term);
      Formula after = subst(*p.abstraction, *p.atom, *p.term2);
      if (!L.contains(before)) return fail(pretty(before) + " is not a hypothesis");
      const Sequent& s = p.premises[0].conclusion;
      if (s.right != R) return fail("premise must keep the right-hand side");
      FormulaSet kept = L.with(after);
      FormulaSet replaced = L.without(before).with(eq).with(after);
      if (s.left == kept || s.left == replaced) return {};
      return fail("premise must replace " + pretty(before) + " by " + pretty(after));
    }
  }
  return fail("unknown rule");
}

}  // namespace detail

/// Checks every node; reports the first failing one in preorder.
inline CheckResult check_proof(const Proof& p) {
  CheckResult here = detail::check_node(p);
  if (!here) return here;
  for (const auto& q : p.premises) {
    CheckResult sub = check_proof(q);
    if (!sub) return sub;
  }
  return {};
}

// ---------------------------------------------------------------------------
// S-expressions:  (Rule "sequent" :key "value" ... (premise) ...)

namespace detail {

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline void write_proof(const Proof& p, std::ostringstream& out, int indent) {
  out << std::string(static_cast<std::size_t>(indent), ' ') << '(' << rule_name(p.rule) << ' '
      << quote(p.conclusion.show());
  if (p.principal) out << " :principal " << quote(pretty(*p.principal));
  if (p.term) out << " :term " << quote(pretty(*p.term));
  if (p.term2) out << " :term2 " << quote(pretty(*p.term2));
  if (p.abstraction) out << " :abstraction " << quote(pretty(*p.abstraction));
  if (p.atom) out << " :atom " << quote(p.atom->name());
  for (const auto& q : p.premises) {
    out << '\n';
    write_proof(q, out, indent + 2);
  }
  out << ')';
}

class SexprReader {
public:
  SexprReader(std::string_view text, Signature& sig) : text_(text), sig_(sig) {}

  Proof read() {
    Proof p = node();
    skip();
    if (pos_ != text_.size()) error("trailing input");
    return p;
  }

private:
  [[noreturn]] void error(const std::string& why) const {
    throw ParseError(pos_, "proof: " + why);
  }

  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else break;
    }
  }

  bool at(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!at(c)) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')' && text_[pos_] != '"')
      ++pos_;
    if (start == pos_) error("expected a word");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string string() {
    expect('"');
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_++];
    }
    if (pos_ >= text_.size()) error("unterminated string");
    ++pos_;
    return out;
  }

  Proof node() {
    expect('(');
    std::string name = word();
    auto rule = rule_from_name(name);
    if (!rule) error("unknown rule '" + name + "'");
    Proof p;
    p.rule = *rule;
    p.conclusion = parse_sequent_text(string(), sig_);
    while (!at(')')) {
      if (at('(')) {
        p.premises.push_back(node());
        continue;
      }
      std::string key = word();
      std::string value = string();
      if (key == ":principal") p.principal = parse_formula_declaring(value, sig_);
      else if (key == ":abstraction") p.abstraction = parse_formula_declaring(value, sig_);
      else if (key == ":term") p.term = parse_term_declaring(value);
      else if (key == ":term2") p.term2 = parse_term_declaring(value);
      else if (key == ":atom") p.atom = Atom::named(value);
      else error("unknown key '" + key + "'");
    }
    expect(')');
    return p;
  }

  Term parse_term_declaring(const std::string& value) {
    // Terms are parsed as the left side of a throwaway equation, which
    // declares function symbols on first use.
    Formula f = parse_formula_declaring(value + " = " + value, sig_);
    return f.terms()[0];
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Signature& sig_;
};

}  // namespace detail

inline std::string write_proof(const Proof& p) {
  std::ostringstream out;
  detail::write_proof(p, out, 0);
  out << '\n';
  return out.str();
}

/// Reads a proof; symbols not yet in `sig` are declared from their use.
inline Proof read_proof(std::string_view text, Signature& sig) { return detail::SexprReader(text, sig).read(); }

}  // namespace nomfol
