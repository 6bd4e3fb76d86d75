#include <gtest/gtest.h>

#include "nomfol/nomfol.hpp"

using namespace nomfol;

namespace {

const Atom a = Atom::named("a");
const Atom b = Atom::named("b");
const Atom c = Atom::named("c");

// k = 2, P true exactly at 1, c = 0, f = identity, R = equality.
OrdinaryModel two() {
  Signature sig;
  return parse_model("domain 2\nfun c : 0\nfun f : 0 1\npred P : 0 1\npred R : 1 0 0 1\n", sig);
}

TableFun at_one(Atom x) {
  return TableFun::tabulate(2, {x}, [x](auto&& look) { return Value(look(x) == 1); });
}

std::vector<Atom> pool() { return suite_atoms(); }

// Pointwise comparison of two tables at every valuation of the given atoms.
bool same_everywhere(const TableFun& x, const TableFun& y, const AtomSet& atoms, std::size_t k) {
  for (const Valuation& s : enumerate_valuations(atoms, k))
    if (x.apply(s) != y.apply(s)) return false;
  return true;
}

}  // namespace

TEST(TableFun, Projection) {
  TableFun p = TableFun::projection(2, a);
  EXPECT_EQ(p.apply(Valuation().with(a, 1)), 1u);
  EXPECT_EQ(p.deps(), std::vector<Atom>{a});
  EXPECT_TRUE(TableFun::projection(1, a).is_constant());
}

TEST(TableFun, ConstantAndEqualityTest) {
  TableFun k5 = TableFun::constant(3, 2);
  for (Value v = 0; v < 3; ++v) EXPECT_EQ(k5.apply(Valuation(v).with(a, v)), 2u);
  TableFun same = TableFun::from_table(2, {a, b}, {1, 0, 0, 1});
  EXPECT_EQ(same.apply(Valuation().with(a, 0).with(b, 0)), 1u);
  EXPECT_EQ(same.apply(Valuation().with(a, 0).with(b, 1)), 0u);
}

TEST(TableFun, Canonicalise) {
  // constant in a over [a, b]
  TableFun f = TableFun::from_table(2, {a, b}, {0, 1, 0, 1});
  EXPECT_EQ(f.deps(), std::vector<Atom>{b});
  EXPECT_EQ(f.table(), (std::vector<Value>{0, 1}));
  EXPECT_EQ(f.canonical(), f);
  TableFun refl = TableFun::tabulate(2, {a}, [](auto&& look) { return Value(look(a) == look(a)); });
  EXPECT_TRUE(refl.is_constant());
  EXPECT_EQ(refl, TableFun::constant(2, 1));
  // deps given out of order are sorted
  TableFun g = TableFun::from_table(2, {b, a}, {0, 0, 1, 1});
  EXPECT_EQ(g, TableFun::projection(2, b));
}

TEST(TableFun, Errors) {
  EXPECT_THROW(TableFun::from_table(2, {a}, {0, 1, 1}), std::invalid_argument);
  EXPECT_THROW(TableFun::from_table(2, {a, a}, {0, 1, 1, 0}), std::invalid_argument);
  std::vector<Atom> many{a, b, c, Atom(0), Atom(1), Atom(2), Atom(3)};
  AtomSet deps(many.begin(), many.end());
  EXPECT_THROW(TableFun::tabulate(2, deps, [](auto&&) { return Value(0); }), std::length_error);
}

TEST(TfSubst, Examples) {
  TableFun u = TableFun::from_table(3, {b}, {2, 0, 1});
  EXPECT_EQ(tf_subst(TableFun::projection(3, a), a, u), u);
  TableFun f = TableFun::from_table(3, {a, b}, {0, 1, 2, 2, 1, 0, 1, 1, 1});
  EXPECT_EQ(tf_subst(f, a, TableFun::projection(3, a)), f);
  EXPECT_EQ(tf_subst(TableFun::projection(2, a), a, TableFun::projection(2, b)), TableFun::projection(2, b));
}

TEST(TfFreshmeet, Examples) {
  TableFun f = TableFun::from_table(2, {b}, {1, 0});
  EXPECT_EQ(tf_freshmeet(a, f), f);
  EXPECT_EQ(tf_freshmeet(a, at_one(a)), TableFun::constant(2, 0));
  EXPECT_EQ(tf_freshmeet(a, TableFun::constant(2, 1)), TableFun::constant(2, 1));
}

TEST(TfEq, Examples) {
  TableFun u = TableFun::from_table(3, {a}, {1, 2, 0});
  EXPECT_EQ(tf_eq(u, u), TableFun::constant(3, 1));
  EXPECT_EQ(tf_eq(TableFun::projection(2, a), TableFun::projection(2, b)), TableFun::from_table(2, {a, b}, {1, 0, 0, 1}));
  EXPECT_EQ(tf_eq(TableFun::constant(2, 0), TableFun::constant(2, 1)), TableFun::constant(2, 0));
}

TEST(Lift, SymbolTables) {
  OrdinaryModel N = two();
  auto I = lift_interpretation(N);
  EXPECT_EQ(I.pred("P", {a}), at_one(a));
  EXPECT_EQ(I.fun("c", {}), TableFun::constant(2, 0));
  Signature sig;
  OrdinaryModel M = parse_model("domain 2\nfun f : 0 1 1 0\n", sig);
  EXPECT_EQ(lift_interpretation(M).fun("f", {a, b}), TableFun::from_table(2, {a, b}, {0, 1, 1, 0}));
}

TEST(StandardEval, Examples) {
  OrdinaryModel N = two();
  Formula all = parse_formula("forall a. P(a)", N.sig);
  for (Value v = 0; v < 2; ++v) EXPECT_FALSE(standard_eval(all, N, Valuation(v)));
  EXPECT_TRUE(standard_eval(parse_formula("a = a", N.sig), N, Valuation()));
  EXPECT_TRUE(standard_eval(parse_formula("P(a)", N.sig), N, Valuation().with(a, 1)));
  EXPECT_EQ(interpret(all, lift_interpretation(N)), TableFun::constant(2, 0));
}

TEST(Agreement, Examples) {
  OrdinaryModel N = two();
  EXPECT_TRUE(agreement_check(Formula::bot(), N));
  EXPECT_TRUE(agreement_check(parse_formula("P(a)", N.sig), N));
  Signature sig = suite_signature();
  Rng rng(2);
  Formula lem = parse_formula("forall a. (P(a) \\/ ~P(a))", sig);
  for (std::size_t k = 1; k <= 3; ++k) {
    OrdinaryModel M = random_model(sig, k, rng);
    EXPECT_TRUE(agreement_check(lem, M));
    EXPECT_EQ(interpret(lem, lift_interpretation(M)), TableFun::constant(k, 1));
  }
}

TEST(Agreement, RandomFormulas) {
  Signature sig = suite_signature();
  Rng rng(41);
  std::vector<Atom> three{a, b, c};
  for (int i = 0; i < 300; ++i) {
    std::size_t k = 1 + pick(rng, 3);
    OrdinaryModel N = random_model(sig, k, rng);
    Formula phi = random_formula(sig, three, 1 + pick(rng, 4), rng);
    ASSERT_TRUE(agreement_check(phi, N)) << pretty(phi) << "\n" << print_model(N);
  }
}

TEST(Valuations, EnumerationCoversDefaults) {
  auto vs = enumerate_valuations({a, b}, 2);
  // four assignments to a, b, each with both default values
  EXPECT_EQ(vs.size(), 8u);
}

TEST(ModelFile, ParseAndPrint) {
  Signature sig;
  OrdinaryModel N = parse_model("# comment\ndomain 2\nfun c : 1\npred R : 1 0\npred R : 0 1\n", sig);
  EXPECT_EQ(N.k, 2u);
  EXPECT_EQ(N.sig.predicate_arity("R"), 2u);
  EXPECT_EQ(N.preds.at("R"), (std::vector<Value>{1, 0, 0, 1}));
  OrdinaryModel back = parse_model(print_model(N), sig);
  EXPECT_EQ(back.preds, N.preds);
  EXPECT_EQ(back.funs, N.funs);
  EXPECT_THROW(parse_model("fun c : 0\n", sig), std::invalid_argument);
  EXPECT_THROW(parse_model("domain 2\npred P : 0 1 1\n", sig), std::invalid_argument);
  EXPECT_THROW(parse_model("domain 2\nfun c : 3\n", sig), std::invalid_argument);
}

TEST(Properties, DepsAreSupport) {
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) {
    std::size_t k = 1 + pick(rng, 3);
    TableFun f = random_table_fun(k, static_cast<Value>(k), pool(), 3, rng);
    AtomSet deps = support(f);
    for (Atom x : pool()) {
      Atom y = fresh(set_union(deps, {x}));
      // the swapped table differs as a function iff x is read
      bool changed = !same_everywhere(act(swap(y, x), f), f, set_union(deps, {x, y}), k);
      ASSERT_EQ(changed, deps.count(x) > 0) << f.show();
    }
  }
}

TEST(Properties, MonotoneUnderSubstitution) {
  Rng rng(13);
  for (int i = 0; i < 500; ++i) {
    std::size_t k = 1 + pick(rng, 3);
    TableFun f = random_table_fun(k, 2, pool(), 3, rng);
    TableFun lower = tf_meet(f, random_table_fun(k, 2, pool(), 3, rng));
    TableFun u = random_table_fun(k, static_cast<Value>(k), pool(), 2, rng);
    Atom x = pool()[pick(rng, pool().size())];
    TableFun fs = tf_subst(f, x, u), ls = tf_subst(lower, x, u);
    ASSERT_EQ(tf_meet(ls, fs), ls);
  }
}

TEST(Properties, FreshmeetIsMeetOverConstants) {
  Rng rng(14);
  for (int i = 0; i < 500; ++i) {
    std::size_t k = 1 + pick(rng, 3);
    TarskiLift L(k);
    TableFun f = random_table_fun(k, 2, pool(), 3, rng);
    Atom x = pool()[pick(rng, pool().size())];
    std::vector<TableFun> consts;
    for (Value v = 0; v < k; ++v) consts.push_back(TableFun::constant(k, v));
    ASSERT_TRUE(freshmeet_char_check(L, f, x, consts, true));
    // brute force: at each valuation, the minimum over the x coordinate
    AtomSet atoms = set_union(support(f), {x});
    for (const Valuation& s : enumerate_valuations(atoms, k)) {
      Value m = 1;
      for (Value v = 0; v < k; ++v) m = std::min(m, f.apply(s.with(x, v)));
      ASSERT_EQ(L.freshmeet(x, f).apply(s), m);
    }
  }
}

TEST(Suites, SigmaOnLift) {
  SuiteReport r = sigma_tarski_suite({1000, 3, 2});
  EXPECT_TRUE(r.ok()) << r.to_text();
  EXPECT_NE(r.find("sigma-terms-k2-a"), nullptr);
}

TEST(Suites, FoleqOnLift) {
  SuiteReport r = foleq_tarski_suite({500, 3, 2});
  EXPECT_TRUE(r.ok()) << r.to_text();
  for (const auto& x : r.results) EXPECT_TRUE(x.exercised()) << x.name;
}
