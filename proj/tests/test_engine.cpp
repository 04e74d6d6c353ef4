#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"

using namespace lpc;

TEST(Engine, AgreesWithRobinson) {
  oracle::TermGen gen(2024);
  int unifiable = 0;
  for (int i = 0; i < 2000; ++i) {
    BindingStore st;
    std::vector<Term> vs;
    for (int k = 0; k < 3; ++k) vs.push_back(st.fresh_var());
    Term a = gen.term(4, vs), b = gen.term(4, vs);
    auto mgu = oracle::robinson(a, b);
    Outcome o = st.unify(a, b);
    ASSERT_EQ(o == Outcome::Ok, mgu.has_value()) << dump_sexpr(a) << " = " << dump_sexpr(b);
    if (!mgu) continue;
    ++unifiable;
    std::vector<Term> ours, theirs;
    for (const auto& v : vs) {
      ours.push_back(st.resolve(v));
      theirs.push_back(oracle::subst_apply(v, *mgu));
    }
    EXPECT_TRUE(oracle::same(st.resolve(a), st.resolve(b)));
    EXPECT_TRUE(oracle::instance_of(ours, theirs));
    EXPECT_TRUE(oracle::instance_of(theirs, ours));
  }
  EXPECT_GT(unifiable, 200);
}

TEST(Engine, OccursCheck) {
  BindingStore st;
  Term x = st.fresh_var();
  EXPECT_EQ(st.unify(x, app(cnst("f"), x)), Outcome::Occurs);
  EXPECT_FALSE(st.is_bound(x->id));
}

TEST(Engine, ScopeCheckOnEigenConstants) {
  BindingStore st;
  Term x = st.fresh_var();
  Term c = st.fresh_eigen();
  Term y = st.fresh_var();
  EXPECT_EQ(st.unify(x, c), Outcome::Scope);
  EXPECT_EQ(st.unify(y, c), Outcome::Ok);
  // Binding y to x lowers nothing here, but an older x must not see c through y.
  BindingStore st2;
  Term x2 = st2.fresh_var();
  Term c2 = st2.fresh_eigen();
  Term y2 = st2.fresh_var();
  ASSERT_EQ(st2.unify(y2, x2), Outcome::Ok);
  EXPECT_EQ(st2.unify(y2, c2), Outcome::Scope);
}

TEST(Engine, FailedUnifyLeavesStoreUnchanged) {
  BindingStore st;
  Term x = st.fresh_var(), y = st.fresh_var();
  Term a = apply(cnst("g"), {x, cnst("a")});
  Term b = apply(cnst("g"), {cnst("b"), cnst("c")});
  EXPECT_EQ(st.unify(a, b), Outcome::Clash);
  EXPECT_FALSE(st.is_bound(x->id));
  EXPECT_FALSE(st.is_bound(y->id));
}

TEST(Engine, CheckpointsAndStaleMarks) {
  BindingStore st;
  Term x = st.fresh_var(), y = st.fresh_var();
  auto outer = st.mark();
  ASSERT_EQ(st.unify(x, cnst("a")), Outcome::Ok);
  auto inner = st.mark();
  ASSERT_EQ(st.unify(y, cnst("b")), Outcome::Ok);
  st.undo(inner);
  EXPECT_FALSE(st.is_bound(y->id));
  EXPECT_TRUE(st.is_bound(x->id));
  st.undo(outer);
  EXPECT_FALSE(st.is_bound(x->id));
  EXPECT_THROW(st.undo(inner), StaleCheckpoint);
  st.undo(outer);  // still usable until dropped
  st.drop(outer);
  EXPECT_THROW(st.undo(outer), StaleCheckpoint);
}

TEST(Engine, MatchAndAssignCounters) {
  BindingStore st;
  Term x = st.fresh_var(), z = st.fresh_var();
  EXPECT_EQ(st.match_lhs(cnst("a"), x), Outcome::Ok);
  EXPECT_EQ(st.counters.nonground_match_lhs_events, 0u);
  EXPECT_EQ(st.match_lhs(z, cnst("a")), Outcome::Ok);
  EXPECT_EQ(st.counters.nonground_match_lhs_events, 1u);
  EXPECT_EQ(st.counters.match_events, 2u);
  EXPECT_EQ(st.assign(x, cnst("a")), Outcome::Ok);
  EXPECT_EQ(st.counters.bound_assign_events, 1u);
  st.strict_match = true;
  Term w = st.fresh_var();
  EXPECT_THROW(st.match_lhs(w, cnst("a")), StrictMatchViolation);
}

TEST(Engine, TraceLines) {
  BindingStore st;
  std::ostringstream os;
  st.trace = &os;
  Term x = st.fresh_var();
  st.unify(x, cnst("a"));
  st.unify(cnst("a"), cnst("b"));
  EXPECT_EQ(os.str(), "EVENT unify (lvar 0) (const a) ok\nEVENT unify (const a) (const b) clash\n");
}
