#include <gtest/gtest.h>

#include "oracles.hpp"
#include "util.hpp"

using namespace lpc;

namespace {

SourceProgram load(const char* rel) { return preprocess_program(parse_program(testutil::read_text(rel))); }

void expect_same(const SearchResult& a, const SearchResult& b, const std::string& what) {
  ASSERT_EQ(a.solutions.size(), b.solutions.size()) << what;
  for (std::size_t i = 0; i < a.solutions.size(); ++i) EXPECT_EQ(a.solutions[i].key(), b.solutions[i].key()) << what;
  EXPECT_EQ(a.incomplete, b.incomplete) << what;
}

}  // namespace

TEST(L1, StlcGolden) {
  CompiledProgram c = compile_program_l1(load("programs/stlc.lp"));
  auto golden = testutil::read_golden("tests/golden/stlc.l1.sexp");
  ASSERT_EQ(c.clauses.size(), golden.size());
  for (std::size_t i = 0; i < golden.size(); ++i) {
    EXPECT_TRUE(alpha_equal(c.clauses[i], golden[i]));
    EXPECT_EQ(dump_sexpr(c.clauses[i]), dump_sexpr(golden[i]));
  }
}

TEST(L1, HeadCompilation) {
  Atom a = make_atom("p", {app(cnst("f"), var("X")), var("Y")});
  auto [pc, e] = compile_head_l1(a);
  EXPECT_EQ(pc.prefix, (std::vector<std::string>{"x1", "x2"}));
  EXPECT_EQ(dump_sexpr(instantiate_hole(pc, e)),
            "(all x1 (all x2 (imp (and (and true (eq (var x1) (app (const f) (var X)))) (eq (var x2) (var Y))) "
            "(atom p (var x1) (var x2)))))");
  auto [pc2, e2] = compile_head_l1(a, 2);
  EXPECT_EQ(pc2.prefix, (std::vector<std::string>{"x1''", "x2''"}));
  auto [pc0, e0] = compile_head_l1(make_atom("q", {}));
  EXPECT_TRUE(pc0.prefix.empty());
  EXPECT_EQ(e0->kind, Kind::True);
}

TEST(L1, ClauseBodyOrderFollowsSource) {
  Formula c = parse_program("h X <- a X <- b X.").clauses[0];
  std::string s = dump_sexpr(compile_clause_l1(c).second);
  EXPECT_LT(s.find("(atom a"), s.find("(atom b"));
}

TEST(L1, ReservedNamesAreRenamed) {
  Formula c = parse_program("all x1. p x1 <- q x1.").clauses[0];
  auto [pc, r] = compile_clause_l1(c);
  ASSERT_EQ(r->kind, Kind::Exists);
  EXPECT_EQ(r->name, "x1_");
  Formula full = instantiate_hole(pc, r);
  // x1 inside the body still refers to the head variable only through x1_.
  EXPECT_TRUE(alpha_equal(full, parse_sexpr(
      "(all x1 (imp (exists y (and (and true (eq (var x1) (var y))) (atom q (var y)))) (atom p (var x1))))")));
}

TEST(L1, ClauseShape) {
  Formula c = compile_program_l1(load("programs/append.lp")).clauses[1];
  ClauseShape s = clause_shape(c);
  EXPECT_EQ(s.prefix.size(), 3u);
  EXPECT_EQ(s.head->pred, "append");
  EXPECT_EQ(s.position, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_THROW(clause_shape(parse_sexpr("(atom p)")), MalformedClause);
  EXPECT_THROW(clause_shape(parse_sexpr("(all x (imp true (atom p (var x) (var x))))")), MalformedClause);
  EXPECT_THROW(clause_shape(parse_sexpr("(imp true (atom p (const a)))")), MalformedClause);
}

TEST(L1, OptimizerEliminatesVariableEqualities) {
  CompiledProgram c = compile_program_l1(load("programs/append.lp"));
  // L is constrained twice in the base clause and stays; the seed ⊤ goes.
  EXPECT_TRUE(alpha_equal(optimize_l1(c.clauses[0]), parse_sexpr(
      "(all x1 (all x2 (all x3 (imp (exists L (and (and (eq (var x1) (const nil)) (eq (var x2) (var L))) "
      "(eq (var x3) (var L)))) (atom append (var x1) (var x2) (var x3))))))")));
  // In the recursive clause L has one constraint and is replaced by x2.
  EXPECT_TRUE(alpha_equal(optimize_l1(c.clauses[1]), parse_sexpr(
      "(all x1 (all x2 (all x3 (imp (exists H (exists T (exists R (and (and (eq (var x1) "
      "(app (app (const cons) (var H)) (var T))) (eq (var x3) (app (app (const cons) (var H)) (var R)))) "
      "(atom append (var T) (var x2) (var R)))))) (atom append (var x1) (var x2) (var x3))))))")))
      << dump_sexpr(optimize_l1(c.clauses[1]));
  Formula f = compile_clause_l1(parse_program("p.").clauses[0]).second;
  EXPECT_EQ(f->kind, Kind::True);
}

TEST(L1, OptimizerReachesEmbeddedClauses) {
  Formula g = compile_goal_l1(parse_query("?- (all y. p y) => p a.").goal);
  std::string before = dump_sexpr(g), after = dump_sexpr(optimize_l1_goal(g));
  EXPECT_NE(before, after);
  EXPECT_EQ(after.find("exists"), std::string::npos);
}

TEST(L1, SolversAgreeWithInterpreter) {
  for (const char* rel : {"programs/append.lp", "programs/hypothetical.lp", "programs/stlc_fo.lp"}) {
    SourceProgram p = load(rel);
    CompiledProgram c = compile_program_l1(p), o = optimize_program_l1(c);
    std::vector<std::string> queries;
    if (std::string(rel).find("append") != std::string::npos)
      queries = {"?- append X Y (cons a (cons b nil)).", "?- append (cons a nil) nil Z."};
    else if (std::string(rel).find("hypo") != std::string::npos)
      queries = {"?- path X Y.", "?- linked a.", "?- all n. (edge n a => path n b)."};
    else
      queries = {"?- of (lam x i (lam y j (var x))) T.", "?- of (lam f (arr i j) (lam x i (app (var f) (var x)))) T."};
    for (const auto& text : queries) {
      Query q = parse_query(text, p);
      auto ref = solve_uniform(p, q, testutil::all_solutions(120));
      Formula g = compile_goal_l1(q.goal);
      auto small = solve_l1(c, g, q.vars, testutil::all_solutions(120));
      auto fused = solve_l1_fused(c, g, q.vars, testutil::all_solutions(120));
      auto opt = solve_l1(o, optimize_l1_goal(g), q.vars, testutil::all_solutions(120));
      expect_same(ref, small, text);
      expect_same(small, fused, text);
      expect_same(ref, opt, text);
    }
  }
}

TEST(L1, FusedDepthMatchesSmallStep) {
  SourceProgram p = parse_program("nat z.\nnat (s N) <- nat N.");
  CompiledProgram c = compile_program_l1(p);
  Query q = parse_query("?- nat X.", p);
  for (int depth = 1; depth <= 40; ++depth) {
    auto a = solve_l1(c, compile_goal_l1(q.goal), q.vars, testutil::all_solutions(depth));
    auto b = solve_l1_fused(c, compile_goal_l1(q.goal), q.vars, testutil::all_solutions(depth));
    expect_same(a, b, "depth " + std::to_string(depth));
    for (std::size_t i = 0; i < a.solutions.size(); ++i)
      EXPECT_EQ(a.solutions[i].depth_used, b.solutions[i].depth_used);
  }
}

TEST(L1, HeadLemmaOnRandomAtoms) {
  oracle::TermGen gen(99);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> names{"X", "Y"};
    int n = gen.pick(0, 3);
    std::vector<Term> args;
    for (int k = 0; k < n; ++k) args.push_back(gen.source_term(3, names));
    Atom a = make_atom("p", args);
    auto [pc, e] = compile_head_l1(a);
    Formula body = e;
    for (auto it = names.rbegin(); it != names.rend(); ++it) body = exists(*it, body);
    Formula clause = instantiate_hole(pc, body);
    // A ground instance of the head is entailed.
    Substitution theta{{"X", gen.ground(2)}, {"Y", gen.ground(2)}};
    Atom inst = a;
    for (auto& arg : inst.args) arg.term = substitute_many(theta, arg.term);
    CompiledProgram empty;
    SearchConfig cfg = testutil::all_solutions(60);
    oracle::Focus<L1Solver> s(empty, cfg, false);
    EXPECT_TRUE(s.entails(clause, inst)) << dump_sexpr(clause);
  }
}
