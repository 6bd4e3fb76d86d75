#pragma once

// Atoms, finite permutations, support and freshness.

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <ranges>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace nomfol {

/// An atom is an interned natural index. Indices below `kNamedBase` display
/// as "a0", "a1", ...; indices from `kNamedBase` upward belong to names that
/// were interned from text (e.g. "x", "foo").
class Atom {
public:
  static constexpr std::uint32_t kNamedBase = 1u << 30;

  constexpr Atom() = default;
  constexpr explicit Atom(std::uint32_t id) : id_(id) {}

  /// Interns `name`. Names of the form a<digits> map straight to that index,
  /// so printing and re-parsing a generated atom is the identity.
  static Atom named(std::string_view name);

  constexpr std::uint32_t id() const { return id_; }
  std::string name() const;

  friend constexpr auto operator<=>(Atom, Atom) = default;

private:
  std::uint32_t id_ = 0;
};

namespace detail {

class AtomNames {
public:
  static AtomNames& instance() {
    static AtomNames names;
    return names;
  }

  Atom intern(std::string_view name) {
    std::lock_guard lock(mu_);
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return Atom(it->second);
    std::uint32_t id = Atom::kNamedBase + static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(std::string(name), id);
    return Atom(id);
  }

  std::string lookup(std::uint32_t id) const {
    std::lock_guard lock(mu_);
    return names_.at(id - Atom::kNamedBase);
  }

private:
  mutable std::mutex mu_;
  std::deque<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

inline bool is_generated_name(std::string_view name) {
  if (name.size() < 2 || name.size() > 10 || name[0] != 'a') return false;
  if (name.size() > 2 && name[1] == '0') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace detail

inline Atom Atom::named(std::string_view name) {
  if (name.empty()) throw std::invalid_argument("empty atom name");
  if (detail::is_generated_name(name)) {
    auto v = std::stoull(std::string(name.substr(1)));
    if (v < kNamedBase) return Atom(static_cast<std::uint32_t>(v));
  }
  return detail::AtomNames::instance().intern(name);
}

inline std::string Atom::name() const {
  if (id_ < kNamedBase) return "a" + std::to_string(id_);
  return detail::AtomNames::instance().lookup(id_);
}

using AtomSet = std::set<Atom>;

inline AtomSet set_union(const AtomSet& x, const AtomSet& y) {
  AtomSet out = x;
  out.insert(y.begin(), y.end());
  return out;
}

inline AtomSet set_minus(const AtomSet& x, const AtomSet& y) {
  AtomSet out;
  std::ranges::set_difference(x, y, std::inserter(out, out.end()));
  return out;
}

inline bool disjoint(const AtomSet& x, const AtomSet& y) {
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() && j != y.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else return false;
  }
  return true;
}

inline std::string show(const AtomSet& s) {
  std::string out = "{";
  bool first = true;
  for (Atom a : s) {
    if (!first) out += ", ";
    out += a.name();
    first = false;
  }
  return out + "}";
}

/// Lowest-index atom not in `avoid`.
inline Atom fresh(const AtomSet& avoid) {
  std::uint32_t candidate = 0;
  for (Atom a : avoid) {
    if (a.id() > candidate) break;
    if (a.id() == candidate) ++candidate;
  }
  return Atom(candidate);
}

/// `n` distinct atoms, each the lowest one still unused.
inline std::vector<Atom> fresh_n(AtomSet avoid, std::size_t n) {
  std::vector<Atom> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Atom a = fresh(avoid);
    out.push_back(a);
    avoid.insert(a);
  }
  return out;
}

/// A finitely-supported bijection on atoms, stored without fixpoints.
class Perm {
public:
  Perm() = default;

  static Perm identity() { return {}; }

  static Perm swap(Atom a, Atom b) {
    Perm p;
    if (a != b) {
      p.map_.emplace(a, b);
      p.map_.emplace(b, a);
    }
    return p;
  }

  /// Builds a permutation from explicit pairs; throws unless the pairs form
  /// a bijection whose domain equals its image.
  static Perm from_pairs(const std::vector<std::pair<Atom, Atom>>& pairs) {
    Perm p;
    AtomSet image;
    for (auto [from, to] : pairs) {
      if (!p.map_.emplace(from, to).second && p.map_[from] != to)
        throw std::invalid_argument("permutation maps an atom twice");
      if (!image.insert(to).second) throw std::invalid_argument("permutation is not injective");
    }
    AtomSet domain;
    for (auto& [from, to] : p.map_) domain.insert(from);
    if (domain != image) throw std::invalid_argument("permutation domain differs from image");
    p.canonicalise();
    return p;
  }

  Atom operator()(Atom a) const {
    auto it = map_.find(a);
    return it == map_.end() ? a : it->second;
  }

  Perm inverse() const {
    Perm p;
    for (auto& [from, to] : map_) p.map_.emplace(to, from);
    return p;
  }

  bool is_identity() const { return map_.empty(); }

  /// Atoms moved by the permutation.
  AtomSet domain() const {
    AtomSet out;
    for (auto& [from, to] : map_) out.insert(from);
    return out;
  }

  const std::map<Atom, Atom>& mapping() const { return map_; }

  friend bool operator==(const Perm&, const Perm&) = default;

private:
  friend Perm compose(const Perm& outer, const Perm& inner);

  void canonicalise() { std::erase_if(map_, [](const auto& kv) { return kv.first == kv.second; }); }

  std::map<Atom, Atom> map_;
};

inline Perm swap(Atom a, Atom b) { return Perm::swap(a, b); }

/// compose(outer, inner)(a) = outer(inner(a)).
inline Perm compose(const Perm& outer, const Perm& inner) {
  Perm p;
  AtomSet touched = set_union(outer.domain(), inner.domain());
  for (Atom a : touched) p.map_.emplace(a, outer(inner(a)));
  p.canonicalise();
  return p;
}

// Permutation action on the basic carriers.
inline Atom act(const Perm& pi, Atom a) { return pi(a); }
inline AtomSet support(Atom a) { return {a}; }

inline AtomSet act(const Perm& pi, const AtomSet& s) {
  AtomSet out;
  for (Atom a : s) out.insert(pi(a));
  return out;
}
inline AtomSet support(const AtomSet& s) { return s; }

/// Values with a permutation action and an exact support procedure.
template <class T>
concept Permutable = requires(const T& x, const Perm& pi) {
  { act(pi, x) } -> std::convertible_to<T>;
  { support(x) } -> std::same_as<AtomSet>;
};

/// Decides a new-quantified statement by evaluating `pred` at one atom fresh
/// for `context`. The caller guarantees `pred` is equivariant outside
/// `context`, which makes one witness as good as any other.
template <class Pred>
bool new_check(const AtomSet& context, Pred&& pred) {
  return std::invoke(std::forward<Pred>(pred), fresh(context));
}

/// Support of a finite set under the pointwise action: the union of the
/// element supports.
template <std::ranges::input_range R>
  requires Permutable<std::ranges::range_value_t<R>>
AtomSet strict_support(const R& elements) {
  AtomSet out;
  for (const auto& x : elements) {
    AtomSet s = support(x);
    out.insert(s.begin(), s.end());
  }
  return out;
}

/// A finitely supported subset of the atoms: either a finite set or the
/// complement of one.
class FinCofinSet {
public:
  static FinCofinSet finite(AtomSet atoms) { return FinCofinSet(false, std::move(atoms)); }
  static FinCofinSet cofinite(AtomSet excluded) { return FinCofinSet(true, std::move(excluded)); }

  bool contains(Atom a) const { return cofinite_ != (listed_.count(a) > 0); }
  bool is_cofinite() const { return cofinite_; }
  const AtomSet& listed() const { return listed_; }

  /// Elements x of the set with a # x; for atoms that means x != a.
  FinCofinSet fresh_part(Atom a) const {
    AtomSet listed = listed_;
    if (cofinite_) listed.insert(a);
    else listed.erase(a);
    return FinCofinSet(cofinite_, std::move(listed));
  }

  friend FinCofinSet act(const Perm& pi, const FinCofinSet& s) {
    return FinCofinSet(s.cofinite_, nomfol::act(pi, s.listed_));
  }
  friend AtomSet support(const FinCofinSet& s) { return s.listed_; }
  friend bool operator==(const FinCofinSet&, const FinCofinSet&) = default;

private:
  FinCofinSet(bool cofinite, AtomSet listed) : cofinite_(cofinite), listed_(std::move(listed)) {}

  bool cofinite_ = false;
  AtomSet listed_;
};

}  // namespace nomfol
