#include <gtest/gtest.h>

#include <random>

#include "lpc/lpc.hpp"

using namespace lpc;

namespace {

Formula random_formula(std::mt19937_64& rng, int depth, std::vector<std::string>& scope) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto term = [&]() -> Term {
    if (!scope.empty() && pick(0, 1)) return var(scope[static_cast<std::size_t>(pick(0, static_cast<int>(scope.size()) - 1))]);
    return pick(0, 1) ? cnst("a") : app(cnst("f"), cnst("b"));
  };
  int r = depth <= 0 ? pick(0, 2) : pick(0, 9);
  switch (r) {
    case 0: return atom_f(make_atom("p", {term(), term()}));
    case 1: return truth();
    case 2: return eq(term(), term());
    case 3: return mtch(term(), term());
    case 4: return assg(term(), term());
    case 5: return imp(random_formula(rng, depth - 1, scope), random_formula(rng, depth - 1, scope));
    case 6: return conj(random_formula(rng, depth - 1, scope), random_formula(rng, depth - 1, scope));
    default: {
      std::string x = "v" + std::to_string(pick(0, 3));
      scope.push_back(x);
      Formula body = random_formula(rng, depth - 1, scope);
      scope.pop_back();
      return r == 7 ? all(x, body) : r == 8 ? exists(x, body) : lam(x, body);
    }
  }
}

}  // namespace

TEST(Term, BuildersAndSpine) {
  Term t = apply(cnst("g"), {var("X"), cnst("a")});
  std::vector<Term> args;
  Term h = spine(t, args);
  EXPECT_EQ(h->name, "g");
  ASSERT_EQ(args.size(), 2u);
  EXPECT_EQ(args[0]->name, "X");
  EXPECT_TRUE(t->has_vars);
  EXPECT_FALSE(t->has_logic);
  EXPECT_EQ(term_depth(t), 2);
  EXPECT_TRUE(term_equal(t, apply(cnst("g"), {var("X"), cnst("a")})));
  EXPECT_FALSE(term_equal(t, apply(cnst("g"), {var("Y"), cnst("a")})));
}

TEST(Sexpr, TermFormat) {
  EXPECT_EQ(dump_sexpr(app(app(cnst("cons"), var("H")), cnst("nil"))),
            "(app (app (const cons) (var H)) (const nil))");
  EXPECT_EQ(dump_sexpr(logic_var(4)), "(lvar 4)");
}

TEST(Sexpr, FormulaFormat) {
  Formula f = all("x", imp(conj(truth(), eq(var("x"), cnst("a"))), atom_f(make_atom("p", {var("x")}))));
  EXPECT_EQ(dump_sexpr(f), "(all x (imp (and true (eq (var x) (const a))) (atom p (var x))))");
  EXPECT_EQ(dump_sexpr(mtch(var("z"), cnst("b"))), "(mtch (var z) (const b))");
  EXPECT_EQ(dump_sexpr(assg(var("z"), cnst("b"))), "(assg (var z) (const b))");
  EXPECT_EQ(dump_sexpr(lam("alpha", eq_atom(make_atom("q", {}), "alpha"))), "(lam alpha (eqatom (atom q) alpha))");
}

TEST(Sexpr, RoundTripRandom) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    std::vector<std::string> scope;
    Formula f = random_formula(rng, 5, scope);
    std::string s = dump_sexpr(f);
    Formula g = parse_sexpr(s);
    EXPECT_EQ(dump_sexpr(g), s);
    EXPECT_TRUE(alpha_equal(f, g));
  }
}

TEST(Sexpr, RejectsGarbage) {
  EXPECT_THROW(parse_sexpr("(atom"), SexprError);
  EXPECT_THROW(parse_sexpr("(frob x)"), SexprError);
  EXPECT_THROW(parse_sexpr("true true"), SexprError);
}

TEST(Alpha, RenamedBindersAreEqual) {
  Formula a = all("x", exists("y", atom_f(make_atom("p", {var("x"), var("y")}))));
  Formula b = all("u", exists("w", atom_f(make_atom("p", {var("u"), var("w")}))));
  Formula c = all("u", exists("w", atom_f(make_atom("p", {var("w"), var("u")}))));
  EXPECT_TRUE(alpha_equal(a, b));
  EXPECT_FALSE(alpha_equal(a, c));
  // Free variables must coincide.
  EXPECT_FALSE(alpha_equal(atom_f(make_atom("p", {var("x")})), atom_f(make_atom("p", {var("y")}))));
  // Association of ∧ matters.
  Formula t = truth();
  EXPECT_FALSE(alpha_equal(conj(conj(t, t), t), conj(t, conj(t, t))));
}

TEST(Alpha, LambdaAndEqAtom) {
  Formula a = lam("alpha", eq_atom(make_atom("p", {}), "alpha"));
  Formula b = lam("beta", eq_atom(make_atom("p", {}), "beta"));
  EXPECT_TRUE(alpha_equal(a, b));
}

TEST(Subst, CaptureAvoiding) {
  // [y/x](∀y. p x y) must not capture.
  Formula f = all("y", atom_f(make_atom("p", {var("x"), var("y")})));
  Formula g = substitute(var("y"), "x", f);
  ASSERT_EQ(g->kind, Kind::All);
  EXPECT_NE(g->name, "y");
  EXPECT_TRUE(alpha_equal(g, all("w", atom_f(make_atom("p", {var("y"), var("w")})))));
}

TEST(Subst, BoundOccurrencesUntouched) {
  Formula f = conj(atom_f(make_atom("p", {var("x")})), all("x", atom_f(make_atom("q", {var("x")}))));
  Formula g = substitute(cnst("a"), "x", f);
  EXPECT_EQ(dump_sexpr(g), "(and (atom p (const a)) (all x (atom q (var x))))");
}

TEST(Subst, SimultaneousAndFreeVars) {
  Formula f = atom_f(make_atom("p", {var("x"), var("y")}));
  Formula g = substitute_many({{"x", var("y")}, {"y", var("x")}}, f);
  EXPECT_EQ(dump_sexpr(g), "(atom p (var y) (var x))");
  EXPECT_THROW(substitute_many({{"x", var("y")}, {"x", var("z")}}, f), std::invalid_argument);
  Formula h = exists("y", conj(atom_f(make_atom("p", {var("x"), var("y")})), eq(var("z"), var("x"))));
  EXPECT_EQ(free_vars(h), (std::vector<std::string>{"x", "z"}));
  EXPECT_TRUE(free_in(h, "z"));
  EXPECT_FALSE(free_in(h, "y"));
}

TEST(Pretty, ReadableNotation) {
  Formula f = all("x", imp(atom_f(make_atom("q", {var("x")})), atom_f(make_atom("p", {app(cnst("f"), var("x"))}))));
  std::string s = pretty_print(f);
  EXPECT_NE(s.find("q x"), std::string::npos);
  EXPECT_NE(s.find("p (f x)"), std::string::npos);
}
