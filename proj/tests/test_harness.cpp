#include <gtest/gtest.h>

#include "util.hpp"

using namespace lpc;

namespace {

bool any_config(const DiffReport& r, const std::string& c) {
  for (const auto& m : r.mismatches)
    if (m.config == c) return true;
  return false;
}

}  // namespace

TEST(Harness, CorpusIsDeterministic) {
  for (Profile p : {Profile::Horn, Profile::HH, Profile::Moded}) {
    auto a = gen_corpus(3, 10, p), b = gen_corpus(3, 10, p), c = gen_corpus(4, 10, p);
    ASSERT_EQ(a.size(), 10u);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].text, b[i].text);
      EXPECT_EQ(a[i].query_texts, b[i].query_texts);
      differs = differs || a[i].text != c[i].text;
    }
    EXPECT_TRUE(differs) << profile_name(p);
  }
}

TEST(Harness, GeneratedTextRoundTrips) {
  for (Profile p : {Profile::Horn, Profile::HH, Profile::Moded})
    for (const auto& item : gen_corpus(8, 20, p)) {
      SourceProgram q = parse_program(item.text);
      ASSERT_EQ(q.clauses.size(), item.program.clauses.size()) << item.text;
      for (std::size_t i = 0; i < q.clauses.size(); ++i)
        EXPECT_TRUE(alpha_equal(q.clauses[i], item.program.clauses[i])) << item.text;
      for (std::size_t i = 0; i < item.queries.size(); ++i)
        EXPECT_TRUE(alpha_equal(parse_query(item.query_texts[i], q).goal, item.queries[i].goal));
    }
}

TEST(Harness, ModedProfileIsWellModed) {
  for (const auto& item : gen_corpus(2, 50, Profile::Moded)) {
    EXPECT_TRUE(check_well_moded(preprocess_program(item.program), true).well_moded) << item.text;
    for (const auto& q : item.queries) EXPECT_TRUE(ground_inputs(q));
  }
}

TEST(Harness, HHProfileUsesHereditaryHarropFeatures) {
  bool imp = false, all = false;
  for (const auto& item : gen_corpus(1, 40, Profile::HH)) {
    imp = imp || item.text.find("=>") != std::string::npos;
    all = all || item.text.find("all ") != std::string::npos;
  }
  EXPECT_TRUE(imp);
  EXPECT_TRUE(all);
}

TEST(Harness, SmallCorporaAgree) {
  for (Profile p : {Profile::Horn, Profile::HH, Profile::Moded}) {
    DiffReport r = diff_corpus(gen_corpus(11, 15, p));
    EXPECT_TRUE(r.pass()) << profile_name(p) << ": " << (r.mismatches.empty() ? "" : r.mismatches[0].detail);
    EXPECT_GT(r.exact, 0u);
    if (p == Profile::Moded) {
      EXPECT_GT(r.match_only_queries, 0u);
      EXPECT_EQ(r.match_only_nonground_events, 0u);
    }
  }
}

TEST(Harness, DetectsDroppedClause) {
  auto corpus = gen_corpus(5, 20, Profile::Horn);
  DiffOptions opt;
  opt.mutate = [](Prepared& p) {
    if (!p.l2.clauses.empty()) p.l2.clauses.pop_back();
  };
  DiffReport r = diff_corpus(corpus, opt);
  EXPECT_FALSE(r.pass());
  EXPECT_TRUE(any_config(r, "l2"));
  EXPECT_FALSE(any_config(r, "l1"));
}

TEST(Harness, DetectsWrongEquality) {
  // Replace the first head equality of every L1 clause by ⊤: the compiled
  // program then proves too much.
  auto corpus = gen_corpus(6, 20, Profile::Horn);
  DiffOptions opt;
  opt.mutate = [](Prepared& p) {
    for (auto& c : p.l1.clauses) {
      std::string s = dump_sexpr(c);
      auto at = s.find("(and true (eq ");
      if (at == std::string::npos) continue;
      int depth = 0;
      std::size_t i = at + 10;  // start of (eq …)
      std::size_t j = i;
      for (; j < s.size(); ++j) {
        if (s[j] == '(') ++depth;
        if (s[j] == ')' && --depth == 0) break;
      }
      s.replace(i, j + 1 - i, "true");
      c = parse_sexpr(s);
    }
  };
  DiffReport r = diff_corpus(corpus, opt);
  EXPECT_FALSE(r.pass());
  EXPECT_TRUE(any_config(r, "l1") || any_config(r, "l1-fused"));
}

TEST(Harness, StrictPairsCatchDivergence) {
  RunRecord a, b;
  a.config = "l1";
  b.config = "l1-fused";
  a.result.incomplete = true;
  b.result.incomplete = false;
  DiffReport r;
  compare_runs(a, b, true, 0, 0, r);
  EXPECT_EQ(r.mismatches.size(), 1u);
  DiffReport loose;
  compare_runs(a, b, false, 0, 0, loose);
  EXPECT_TRUE(loose.pass());
}

TEST(Harness, ComparisonRules) {
  auto rec = [](std::vector<std::string> ans, bool exhaustive) {
    RunRecord r;
    r.answers = std::move(ans);
    std::sort(r.answers.begin(), r.answers.end());
    r.result.incomplete = !exhaustive;
    return r;
  };
  DiffReport r;
  compare_runs(rec({"a", "b"}, true), rec({"b", "a"}, true), false, 0, 0, r);
  EXPECT_TRUE(r.pass());
  compare_runs(rec({"a", "b"}, true), rec({"a"}, false), false, 0, 0, r);
  EXPECT_TRUE(r.pass());
  compare_runs(rec({"a", "b"}, true), rec({"c"}, false), false, 0, 0, r);
  EXPECT_EQ(r.mismatches.size(), 1u);
  compare_runs(rec({"a"}, false), rec({"c"}, false), false, 0, 0, r);
  EXPECT_EQ(r.skipped, 1u);
  compare_runs(rec({"a", "a"}, true), rec({"a"}, true), false, 0, 0, r);
  EXPECT_EQ(r.mismatches.size(), 2u);
}

TEST(Harness, JsonReport) {
  DiffReport r = diff_corpus(gen_corpus(1, 3, Profile::Moded));
  nlohmann::json j = to_json(r);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["programs"], 3);
  ASSERT_FALSE(j["queries"].empty());
  EXPECT_TRUE(j["queries"][0]["runs"].contains("l2-fused"));
  EXPECT_TRUE(j["queries"][0]["runs"]["l2"]["counters"].contains("match"));
}
