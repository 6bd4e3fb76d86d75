#pragma once

// Text front end: formulas, terms, sequent lines and signature files.
//
// Precedence, tightest first: ~, /\, \/, ->, <->, forall. A forall body
// extends as far right as possible. /\ and \/ associate to the left, -> to
// the right; <-> does not associate.

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "syntax.hpp"

namespace nomfol {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t position, const std::string& message)
      : std::runtime_error("parse error at " + std::to_string(position) + ": " + message), position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

namespace detail {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Equals, Not, And, Or, Imp, Iff, Turnstile, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      out.push_back({Tok::Ident, std::string(src.substr(start, i - start)), start});
      continue;
    }
    struct Punct {
      std::string_view text;
      Tok kind;
    };
    static constexpr Punct puncts[] = {
        {"<->", Tok::Iff}, {"->", Tok::Imp}, {"|-", Tok::Turnstile}, {"/\\", Tok::And}, {"\\/", Tok::Or},
        {"(", Tok::LParen}, {")", Tok::RParen}, {",", Tok::Comma}, {".", Tok::Dot},  {"=", Tok::Equals},
        {"~", Tok::Not},
    };
    bool matched = false;
    for (const auto& p : puncts) {
      if (starts(p.text)) {
        out.push_back({p.kind, std::string(p.text), start});
        i += p.text.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(start, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

inline bool is_keyword(const std::string& s) { return s == "forall" || s == "bottom" || s == "top"; }

inline bool is_atom_name(const std::string& s) {
  return !s.empty() && s[0] >= 'a' && s[0] <= 'z' && !is_keyword(s);
}

class Parser {
public:
  Parser(std::string_view src, Signature& sig, bool declare_on_use)
      : toks_(tokenize(src)), sig_(sig), declare_(declare_on_use) {}

  Formula formula() { return iff(); }

  Term term() {
    const Token& t = expect(Tok::Ident, "term");
    if (is_keyword(t.text)) throw ParseError(t.pos, "keyword '" + t.text + "' is not a term");
    if (peek().kind == Tok::LParen) return application_term(t);
    if (auto ar = sig_.function_arity(t.text)) {
      if (*ar != 0) throw ParseError(t.pos, "function '" + t.text + "' expects " + std::to_string(*ar) + " arguments");
      return Term::app(t.text, {});
    }
    if (sig_.predicate_arity(t.text)) throw ParseError(t.pos, "predicate '" + t.text + "' used as a term");
    if (!is_atom_name(t.text)) throw ParseError(t.pos, "unknown symbol '" + t.text + "'");
    return var(Atom::named(t.text));
  }

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

  void expect_end() {
    if (peek().kind != Tok::End) throw ParseError(peek().pos, "unexpected '" + peek().text + "'");
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  std::size_t position() const { return pos_; }

private:
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      throw ParseError(peek().pos, std::string("expected ") + what + (peek().kind == Tok::End ? " before end of input" : ", found '" + peek().text + "'"));
    }
    return toks_[pos_++];
  }

  Formula iff() {
    Formula lhs = imp();
    if (accept(Tok::Iff)) {
      Formula rhs = imp();
      if (peek().kind == Tok::Iff) throw ParseError(peek().pos, "'<->' does not associate; add parentheses");
      return Formula::iff(lhs, rhs);
    }
    return lhs;
  }

  Formula imp() {
    Formula lhs = disj();
    if (accept(Tok::Imp)) return Formula::imp(lhs, imp());
    return lhs;
  }

  Formula disj() {
    Formula lhs = conj();
    while (accept(Tok::Or)) lhs = Formula::disj(lhs, conj());
    return lhs;
  }

  Formula conj() {
    Formula lhs = unary();
    while (accept(Tok::And)) lhs = Formula::conj(lhs, unary());
    return lhs;
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::neg(unary());
    if (peek().kind == Tok::Ident && peek().text == "forall") {
      ++pos_;
      const Token& b = expect(Tok::Ident, "bound atom");
      if (!is_atom_name(b.text) || sig_.declares(b.text)) throw ParseError(b.pos, "'" + b.text + "' cannot be bound");
      expect(Tok::Dot, "'.' after bound atom");
      return Formula::all(Atom::named(b.text), iff());
    }
    return primary();
  }

  Formula primary() {
    if (accept(Tok::LParen)) {
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    const Token& t = expect(Tok::Ident, "formula");
    if (t.text == "bottom") return Formula::bot();
    if (t.text == "top") return Formula::top();
    if (auto ar = sig_.predicate_arity(t.text)) return predicate(t, *ar);
    if (sig_.function_arity(t.text) || is_atom_name(t.text) || !declare_) {
      if (!sig_.function_arity(t.text) && !is_atom_name(t.text))
        throw ParseError(t.pos, "unknown symbol '" + t.text + "'");
      // Either an equation or, when symbols are declared on use, a predicate.
      std::size_t save = pos_;
      --pos_;
      if (declare_ && !sig_.function_arity(t.text) && !equation_follows()) {
        pos_ = save;
        return undeclared_predicate(t);
      }
      Term lhs = term();
      expect(Tok::Equals, "'='");
      return Formula::eq(lhs, term());
    }
    return undeclared_predicate(t);
  }

  // Looks past an identifier and its optional argument list for '='.
  bool equation_follows() const {
    std::size_t k = pos_ + 1;
    if (toks_[k].kind == Tok::LParen) {
      int depth = 0;
      for (; k < toks_.size(); ++k) {
        if (toks_[k].kind == Tok::LParen) ++depth;
        if (toks_[k].kind == Tok::RParen && --depth == 0) break;
      }
      ++k;
    }
    return k < toks_.size() && toks_[k].kind == Tok::Equals;
  }

  Formula undeclared_predicate(const Token& t) {
    std::vector<Term> args = arguments();
    sig_.declare_predicate(t.text, args.size());
    return Formula::pred(t.text, std::move(args));
  }

  Formula predicate(const Token& t, std::size_t arity) {
    std::vector<Term> args = arguments();
    if (args.size() != arity)
      throw ParseError(t.pos, "predicate '" + t.text + "' expects " + std::to_string(arity) + " arguments, got " +
                                  std::to_string(args.size()));
    return Formula::pred(t.text, std::move(args));
  }

  Term application_term(const Token& t) {
    std::vector<Term> args = arguments();
    auto ar = sig_.function_arity(t.text);
    if (!ar) {
      if (!declare_) throw ParseError(t.pos, "unknown function '" + t.text + "'");
      if (sig_.predicate_arity(t.text)) throw ParseError(t.pos, "predicate '" + t.text + "' used as a term");
      sig_.declare_function(t.text, args.size());
      ar = args.size();
    }
    if (*ar != args.size())
      throw ParseError(t.pos, "function '" + t.text + "' expects " + std::to_string(*ar) + " arguments, got " +
                                  std::to_string(args.size()));
    return Term::app(t.text, std::move(args));
  }

  std::vector<Term> arguments() {
    std::vector<Term> args;
    if (!accept(Tok::LParen)) return args;
    if (accept(Tok::RParen)) return args;
    do {
      args.push_back(term());
    } while (accept(Tok::Comma));
    expect(Tok::RParen, "')'");
    return args;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Signature& sig_;
  bool declare_;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text, const Signature& sig) {
  Signature copy = sig;
  detail::Parser p(text, copy, false);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

/// Parses and declares unseen symbols in `sig` by their use: an applied name
/// in term position is a function, anything else in formula position that is
/// not followed by '=' is a predicate.
inline Formula parse_formula_declaring(std::string_view text, Signature& sig) {
  detail::Parser p(text, sig, true);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

inline Term parse_term(std::string_view text, const Signature& sig) {
  Signature copy = sig;
  detail::Parser p(text, copy, false);
  Term t = p.term();
  p.expect_end();
  return t;
}

struct SequentText {
  std::vector<Formula> left;
  std::vector<Formula> right;
};

namespace detail {

inline std::vector<std::string_view> split_top_level(std::string_view s) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == ',' && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  std::erase_if(parts, [](std::string_view p) {
    return p.find_first_not_of(" \t\r\n") == std::string_view::npos;
  });
  return parts;
}

}  // namespace detail

/// Parses "phi1, phi2 |- psi1, psi2". Either side may be empty.
inline SequentText parse_sequent(std::string_view text, Signature& sig, bool declare_on_use) {
  auto turn = text.find("|-");
  if (turn == std::string_view::npos) throw ParseError(0, "sequent needs '|-'");
  if (text.find("|-", turn + 2) != std::string_view::npos) throw ParseError(turn, "sequent has two '|-'");
  SequentText out;
  auto side = [&](std::string_view part, std::vector<Formula>& dest) {
    for (auto piece : detail::split_top_level(part)) {
      dest.push_back(declare_on_use ? parse_formula_declaring(piece, sig) : parse_formula(piece, sig));
    }
  };
  side(text.substr(0, turn), out.left);
  side(text.substr(turn + 2), out.right);
  return out;
}

/// Signature file: lines "fun name arity" / "pred name arity", '#' comments.
inline Signature parse_signature(std::string_view text) {
  Signature sig;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kind, name;
    long long arity = -1;
    if (!(ls >> kind)) continue;
    std::string extra;
    if (!(ls >> name >> arity) || arity < 0 || (ls >> extra))
      throw ParseError(lineno, "signature line must read 'fun|pred name arity'");
    if (detail::is_keyword(name)) throw ParseError(lineno, "'" + name + "' is reserved");
    try {
      if (kind == "fun") sig.declare_function(name, static_cast<std::size_t>(arity));
      else if (kind == "pred") sig.declare_predicate(name, static_cast<std::size_t>(arity));
      else throw ParseError(lineno, "unknown declaration '" + kind + "'");
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return sig;
}

inline std::string print_signature(const Signature& sig) {
  std::string out;
  for (const auto& f : sig.functions()) out += "fun " + f.name + " " + std::to_string(f.arity) + "\n";
  for (const auto& p : sig.predicates()) out += "pred " + p.name + " " + std::to_string(p.arity) + "\n";
  return out;
}

// Printing. Nullary functions print as "c()" so that text re-parses the same
// way with or without a signature.

inline std::string pretty(const Term& t) {
  if (t.is_var()) return t.atom().name();
  std::string out = t.symbol() + "(";
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ", ";
    out += pretty(t.args()[i]);
  }
  return out + ")";
}

namespace detail {

enum Prec { kQuant = 0, kIff = 1, kImp = 2, kOr = 3, kAnd = 4, kNot = 5, kAtom = 6 };

inline bool as_or(const Formula& f, Formula& x, Formula& y) {
  if (f.kind() != FormulaKind::Neg || f.body().kind() != FormulaKind::And) return false;
  const Formula& c = f.body();
  if (c.left().kind() != FormulaKind::Neg || c.right().kind() != FormulaKind::Neg) return false;
  x = c.left().body();
  y = c.right().body();
  return true;
}

inline bool as_imp(const Formula& f, Formula& x, Formula& y) {
  Formula nx = f, yy = f;
  if (!as_or(f, nx, yy) || nx.kind() != FormulaKind::Neg) return false;
  x = nx.body();
  y = yy;
  return true;
}

inline bool as_iff(const Formula& f, Formula& x, Formula& y) {
  if (f.kind() != FormulaKind::And) return false;
  Formula x1 = f, y1 = f, x2 = f, y2 = f;
  if (!as_imp(f.left(), x1, y1) || !as_imp(f.right(), x2, y2)) return false;
  if (!x1.same_tree(y2) || !y1.same_tree(x2)) return false;
  x = x1;
  y = y1;
  return true;
}

inline std::string pretty(const Formula& f, int ctx) {
  auto wrap = [&](int prec, std::string s) { return prec < ctx ? "(" + s + ")" : s; };
  Formula x = f, y = f;
  switch (f.kind()) {
    case FormulaKind::Bot: return "bottom";
    case FormulaKind::Eq: return nomfol::pretty(f.terms()[0]) + " = " + nomfol::pretty(f.terms()[1]);
    case FormulaKind::Pred: {
      if (f.terms().empty()) return f.symbol();
      std::string out = f.symbol() + "(";
      for (std::size_t i = 0; i < f.terms().size(); ++i) {
        if (i) out += ", ";
        out += nomfol::pretty(f.terms()[i]);
      }
      return out + ")";
    }
    case FormulaKind::All:
      if (ctx > kQuant) return "(forall " + f.binder().name() + ". " + pretty(f.body(), kQuant) + ")";
      return "forall " + f.binder().name() + ". " + pretty(f.body(), kQuant);
    case FormulaKind::And:
      if (as_iff(f, x, y)) return wrap(kIff, pretty(x, kImp) + " <-> " + pretty(y, kImp));
      return wrap(kAnd, pretty(f.left(), kAnd) + " /\\ " + pretty(f.right(), kNot));
    case FormulaKind::Neg:
      if (f.body().kind() == FormulaKind::Bot) return "top";
      if (as_imp(f, x, y)) return wrap(kImp, pretty(x, kOr) + " -> " + pretty(y, kImp));
      if (as_or(f, x, y)) return wrap(kOr, pretty(x, kOr) + " \\/ " + pretty(y, kAnd));
      return "~" + pretty(f.body(), kNot);
  }
  return "?";
}

}  // namespace detail

inline std::string pretty(const Formula& f) { return detail::pretty(f, detail::kQuant); }

inline std::string pretty(const std::vector<Formula>& left, const std::vector<Formula>& right) {
  std::string out;
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (i) out += ", ";
    out += pretty(left[i]);
  }
  out += left.empty() ? "|-" : " |-";
  for (std::size_t i = 0; i < right.size(); ++i) {
    out += i ? ", " : " ";
    out += pretty(right[i]);
  }
  return out;
}

}  // namespace nomfol
