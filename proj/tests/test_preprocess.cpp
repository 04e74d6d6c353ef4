#include <gtest/gtest.h>

#include "util.hpp"

using namespace lpc;

namespace {

Formula clause(const std::string& text) { return parse_program(text).clauses.at(0); }

}  // namespace

TEST(Preprocess, DistributesOverImplicationAndForall) {
  auto out = distribute(clause("all x. all y. (q x y => (p1 x y, (r x y => p2 x)))."));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_TRUE(alpha_equal(out[0], clause("all x. all y. (q x y => p1 x y).")));
  EXPECT_TRUE(alpha_equal(out[1], clause("all x. all y. (q x y => r x y => p2 x).")));
}

TEST(Preprocess, HeadlessClausesVanish) {
  EXPECT_TRUE(distribute(clause("q c d => true.")).empty());
  EXPECT_TRUE(distribute(clause("all x. (p x => (true, true)).")).empty());
  EXPECT_EQ(distribute(clause("(p a, true), p b.")).size(), 2u);
}

TEST(Preprocess, ProgramFile) {
  SourceProgram p = preprocess_program(parse_program(testutil::read_text("programs/distribute.lp")));
  ASSERT_EQ(p.clauses.size(), 4u);
  for (const auto& c : p.clauses) EXPECT_TRUE(clause_normal(c));
}

TEST(Preprocess, GoalsKeepConjunctionButSplitAssumptions) {
  Query q = parse_query("?- (p a, (q b => p b)) => p a, true.");
  Query n = preprocess_query(q);
  Formula expected = parse_query("?- (q b => p b) => p a => (p a, true).").goal;
  EXPECT_TRUE(alpha_equal(n.goal, expected)) << dump_sexpr(n.goal);
  EXPECT_TRUE(goal_normal(n.goal));
  EXPECT_FALSE(goal_normal(q.goal));
}

TEST(Preprocess, AlreadyNormalIsUnchanged) {
  SourceProgram p = parse_program(testutil::read_text("programs/append.lp"));
  SourceProgram q = preprocess_program(p);
  ASSERT_EQ(p.clauses.size(), q.clauses.size());
  for (std::size_t i = 0; i < p.clauses.size(); ++i) EXPECT_EQ(dump_sexpr(p.clauses[i]), dump_sexpr(q.clauses[i]));
}

TEST(Preprocess, PreservesAnswers) {
  SourceProgram raw = parse_program(testutil::read_text("programs/distribute.lp"));
  SourceProgram pre = preprocess_program(raw);
  for (const char* text : {"?- p1 X Y.", "?- p2 X.", "?- r a b => p2 X.", "?- q X Y."}) {
    Query q = parse_query(text, raw);
    auto a = solve_uniform(raw, q, testutil::all_solutions());
    auto b = solve_uniform(pre, preprocess_query(q), testutil::all_solutions());
    ASSERT_EQ(a.solutions.size(), b.solutions.size()) << text;
    for (std::size_t i = 0; i < a.solutions.size(); ++i) EXPECT_EQ(a.solutions[i].key(), b.solutions[i].key());
  }
}

TEST(Preprocess, CompilersRejectUnpreprocessedClauses) {
  Formula c = clause("all x. (p x, q x).");
  try {
    compile_clause_l1(c);
    FAIL();
  } catch (const CompileError& e) {
    EXPECT_EQ(e.kind, CompileError::Kind::UnpreprocessedConnective);
  }
  EXPECT_THROW(compile_clause_l0(c), CompileError);
  EXPECT_THROW(compile_clause_l2(c), CompileError);
}
