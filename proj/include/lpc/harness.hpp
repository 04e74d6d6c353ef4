#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lpc/interp.hpp"
#include "lpc/l0.hpp"
#include "lpc/l1.hpp"
#include "lpc/l2.hpp"
#include "lpc/modes.hpp"
#include "lpc/parser.hpp"
#include "lpc/preprocess.hpp"
#include "lpc/pretty.hpp"

namespace lpc {

enum class Profile { Horn, HH, Moded };

inline const char* profile_name(Profile p) {
  switch (p) {
    case Profile::Horn: return "horn";
    case Profile::HH: return "hh";
    case Profile::Moded: return "moded";
  }
  return "?";
}

inline Profile parse_profile(const std::string& s) {
  if (s == "horn") return Profile::Horn;
  if (s == "hh") return Profile::HH;
  if (s == "moded") return Profile::Moded;
  throw std::invalid_argument("unknown profile '" + s + "'");
}

struct CorpusItem {
  std::string text;  // the program as generated, in concrete syntax
  SourceProgram program;
  std::vector<std::string> query_texts;
  std::vector<Query> queries;
};

// ---------------------------------------------------------------------------
// Corpus generation

namespace detail {

class Generator {
 public:
  Generator(std::uint64_t seed, Profile prof) : rng_(seed), prof_(prof) {}

  CorpusItem item() {
    preds_.clear();
    int np = pick(1, 3);
    const char* names[] = {"p", "q", "r"};
    for (int i = 0; i < np; ++i) {
      Pred p{names[i], pick(0, 3), {}};
      for (int j = 0; j < p.arity; ++j)
        p.marks.push_back(prof_ == Profile::Moded ? (chance(0.6) ? Mode::In : Mode::Out)
                                                  : Mode::Unmoded);
      preds_.push_back(p);
    }
    SourceProgram src;
    int nclauses = pick(np, 6);
    std::vector<int> owners;
    for (int i = 0; i < np; ++i) owners.push_back(i);
    while (static_cast<int>(owners.size()) < nclauses) owners.push_back(pick(0, np - 1));
    std::sort(owners.begin(), owners.end());
    for (int i : owners) src.clauses.push_back(top_clause(i));
    if (prof_ == Profile::HH && chance(0.15)) src.clauses.push_back(headless());
    if (prof_ == Profile::Moded)
      for (const auto& p : preds_)
        if (p.arity > 0) src.modes[p.name] = {static_cast<std::size_t>(p.arity), p.marks};

    CorpusItem it;
    it.text = pretty_print(src);
    it.program = parse_program(it.text);
    for (int k = 0; k < 3; ++k) {
      std::string q = "?- " + pretty_print(query()) + ".";
      it.queries.push_back(parse_query(q, it.program));
      it.query_texts.push_back(std::move(q));
    }
    return it;
  }

 private:
  struct Pred {
    std::string name;
    int arity;
    std::vector<Mode> marks;
  };

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& one_of(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(pick(0, static_cast<int>(v.size()) - 1))];
  }

  bool moded() const { return prof_ == Profile::Moded; }
  bool hh() const { return prof_ != Profile::Horn; }

  Term constant() {
    static const char* cs[] = {"a", "b", "c"};
    return cnst(cs[pick(0, 2)]);
  }

  // A term of depth ≤ depth over `vars` (constants only if empty).
  Term term(int depth, const std::vector<std::string>& vars) {
    int r = pick(0, 9);
    if (depth <= 0 || r < 6) {
      if (!vars.empty() && r < 4) return var(one_of(vars));
      return constant();
    }
    if (r < 8) return app(cnst("f"), term(depth - 1, vars));
    return apply(cnst("g"), {term(depth - 1, vars), term(depth - 1, vars)});
  }

  Atom atom(int pi, const std::vector<Term>& args) {
    Atom a;
    a.pred = preds_[static_cast<std::size_t>(pi)].name;
    for (const auto& t : args) a.args.push_back({t, Mode::Unmoded});
    return a;
  }

  static void add_vars(const Term& t, std::vector<std::string>& into) {
    std::vector<std::string> vs;
    collect_vars(t, vs);
    for (auto& v : vs)
      if (std::find(into.begin(), into.end(), v) == into.end()) into.push_back(v);
  }

  // Variables: the pool for unmoded clauses; in moded ones `ground` tracks
  // what the dataflow has made ground so far.
  struct Scope {
    std::vector<std::string> pool;
    std::vector<std::string> ground;
    std::vector<std::string> eigen;  // lowercase names bound by `all`
    int level;                       // calls must target predicates below this
  };

  std::vector<std::string> visible(const Scope& s) const {
    std::vector<std::string> v = s.pool;
    v.insert(v.end(), s.eigen.begin(), s.eigen.end());
    return v;
  }
  std::vector<std::string> visible_ground(const Scope& s) const {
    std::vector<std::string> v = s.ground;
    v.insert(v.end(), s.eigen.begin(), s.eigen.end());
    return v;
  }

  Formula call(int pi, Scope& s) {
    const Pred& p = preds_[static_cast<std::size_t>(pi)];
    std::vector<Term> args;
    for (int j = 0; j < p.arity; ++j) {
      if (moded() && p.marks[static_cast<std::size_t>(j)] == Mode::In)
        args.push_back(term(pick(0, 2), visible_ground(s)));
      else
        args.push_back(term(pick(0, 2), visible(s)));
    }
    if (moded())
      for (int j = 0; j < p.arity; ++j)
        if (p.marks[static_cast<std::size_t>(j)] == Mode::Out) add_vars(args[static_cast<std::size_t>(j)], s.ground);
    return atom_f(atom(pi, args));
  }

  Formula goal(Scope& s, int budget) {
    if (s.level == 0) return truth();
    int callee = pick(0, s.level - 1);
    int r = pick(0, 9);
    if (!hh() || budget == 0 || r < 6) return call(callee, s);
    if (r < 7) return truth();
    if (r < 8) {
      std::string x = s.eigen.empty() ? "x" : "y";
      if (std::find(s.eigen.begin(), s.eigen.end(), x) != s.eigen.end()) return call(callee, s);
      s.eigen.push_back(x);
      Formula g = goal(s, budget - 1);
      s.eigen.pop_back();
      return all(x, g);
    }
    // C => G with C a clause for a predicate G may use.
    Formula c = embedded(pick(0, callee), s);
    return imp(c, goal(s, budget - 1));
  }

  // A hypothetical clause; its own body only calls predicates below it, so
  // search stays finite.
  Formula embedded(int pi, const Scope& outer) {
    const Pred& p = preds_[static_cast<std::size_t>(pi)];
    Scope s = outer;
    s.level = pi;
    std::string y;
    if (chance(0.4) && std::find(s.pool.begin(), s.pool.end(), "U") == s.pool.end()) {
      y = "U";
      s.pool.push_back(y);
    }
    std::vector<Term> args(static_cast<std::size_t>(p.arity));
    for (int j = 0; j < p.arity; ++j)
      if (!moded() || p.marks[static_cast<std::size_t>(j)] == Mode::In) {
        args[static_cast<std::size_t>(j)] = term(pick(0, 1), visible(s));
        if (moded()) add_vars(args[static_cast<std::size_t>(j)], s.ground);
      }
    Formula body;
    if (pi > 0 && chance(0.3)) body = call(pick(0, pi - 1), s);
    for (int j = 0; j < p.arity; ++j)
      if (moded() && p.marks[static_cast<std::size_t>(j)] == Mode::Out)
        args[static_cast<std::size_t>(j)] = term(pick(0, 1), visible_ground(s));
    Formula c = atom_f(atom(pi, args));
    if (body) c = imp(body, c);
    if (!y.empty()) c = all(y, c);
    return c;
  }

  Formula top_clause(int pi) {
    const Pred& p = preds_[static_cast<std::size_t>(pi)];
    Scope s{{"X", "Y", "Z", "W"}, {}, {}, pi};
    std::vector<Term> args(static_cast<std::size_t>(p.arity));
    // Occasional structural recursion on the first input argument.
    int first_in = -1;
    for (int j = 0; j < p.arity && first_in < 0; ++j)
      if (!moded() || p.marks[static_cast<std::size_t>(j)] == Mode::In) first_in = j;
    const bool recursive = first_in >= 0 && chance(0.12);
    for (int j = 0; j < p.arity; ++j) {
      if (moded() && p.marks[static_cast<std::size_t>(j)] == Mode::Out) continue;
      args[static_cast<std::size_t>(j)] =
          recursive && j == first_in ? app(cnst("f"), var("V")) : term(pick(0, 2), s.pool);
      if (moded()) add_vars(args[static_cast<std::size_t>(j)], s.ground);
    }
    if (recursive) s.pool.push_back("V");
    std::vector<Formula> body;
    if (recursive) {
      std::vector<Term> rargs;
      for (int j = 0; j < p.arity; ++j) {
        if (j == first_in)
          rargs.push_back(var("V"));
        else if (moded() && p.marks[static_cast<std::size_t>(j)] == Mode::In)
          rargs.push_back(term(pick(0, 1), visible_ground(s)));
        else
          rargs.push_back(term(pick(0, 1), visible(s)));
      }
      if (moded())
        for (int j = 0; j < p.arity; ++j)
          if (p.marks[static_cast<std::size_t>(j)] == Mode::Out) add_vars(rargs[static_cast<std::size_t>(j)], s.ground);
      body.push_back(atom_f(atom(pi, rargs)));
    }
    int nb = pi == 0 ? 0 : pick(0, 2);
    for (int k = 0; k < nb; ++k) body.push_back(goal(s, 2));
    for (int j = 0; j < p.arity; ++j)
      if (moded() && p.marks[static_cast<std::size_t>(j)] == Mode::Out)
        args[static_cast<std::size_t>(j)] = term(pick(0, 2), s.ground);

    Formula head = atom_f(atom(pi, args));
    // Clause-position conjunction, split by preprocessing.
    if (hh() && !moded() && chance(0.15)) {
      int other = pick(0, static_cast<int>(preds_.size()) - 1);
      Scope hs{{"X", "Y", "Z", "W"}, {}, {}, 0};
      std::vector<Term> oargs;
      for (int j = 0; j < preds_[static_cast<std::size_t>(other)].arity; ++j) oargs.push_back(term(1, hs.pool));
      head = conj(head, atom_f(atom(other, oargs)));
    }
    Formula c = head;
    // `h <- g1 <- g2`: the first body goal is the innermost antecedent.
    for (const auto& g : body) c = imp(g, c);
    return c;
  }

  Formula headless() {
    Scope s{{"X", "Y"}, {}, {}, static_cast<int>(preds_.size())};
    return imp(call(0, s), truth());
  }

  Formula query() {
    Scope s{{"X", "Y"}, {}, {}, static_cast<int>(preds_.size())};
    int pi = pick(0, static_cast<int>(preds_.size()) - 1);
    const Pred& p = preds_[static_cast<std::size_t>(pi)];
    std::vector<Term> args;
    for (int j = 0; j < p.arity; ++j) {
      if (moded() && p.marks[static_cast<std::size_t>(j)] == Mode::In)
        args.push_back(term(pick(0, 2), {}));
      else if (chance(0.4))
        args.push_back(var(one_of(s.pool)));
      else
        args.push_back(term(pick(0, 2), chance(0.5) ? s.pool : std::vector<std::string>{}));
    }
    Formula g = atom_f(atom(pi, args));
    if (hh() && !moded() && chance(0.2)) {
      // A hypothetical or universal query.
      if (chance(0.5)) {
        std::vector<Term> hargs;
        for (int j = 0; j < p.arity; ++j) hargs.push_back(term(1, {}));
        g = imp(atom_f(atom(pi, hargs)), g);
      } else {
        g = conj(g, truth());
      }
    }
    return g;
  }

  std::mt19937_64 rng_;
  Profile prof_;
  std::vector<Pred> preds_;
};

}  // namespace detail

// Deterministic in (seed, count, profile).
inline std::vector<CorpusItem> gen_corpus(std::uint64_t seed, int count, Profile prof) {
  detail::Generator g(seed * 1000003ULL + static_cast<std::uint64_t>(prof), prof);
  std::vector<CorpusItem> out;
  for (int i = 0; i < count; ++i) out.push_back(g.item());
  return out;
}

// ---------------------------------------------------------------------------
// Differential runs

struct Prepared {
  SourceProgram raw;
  SourceProgram pre;
  CompiledProgram l0, l1, l1_opt, l2;

  explicit Prepared(const SourceProgram& p)
      : raw(p),
        pre(preprocess_program(p)),
        l0(compile_program_l0(pre)),
        l1(compile_program_l1(pre)),
        l1_opt(optimize_program_l1(l1)),
        l2(compile_program_l2(pre)) {}
};

struct RunRecord {
  std::string config;
  bool error = false;
  std::string message;
  std::vector<std::string> answers;  // sorted answer keys
  SearchResult result;

  bool solvable() const { return !result.solutions.empty(); }
  bool exhaustive() const { return !error && result.exhaustive(); }
};

inline const std::vector<std::string>& all_configs() {
  static const std::vector<std::string> c = {"interp",   "interp-raw", "l0",     "l1",       "l1-fused",
                                             "l1-opt",   "l2",         "l2-fused", "l2-strict"};
  return c;
}

// Runs one configuration on one query.
inline RunRecord run_config(const std::string& config, const Prepared& p, const Query& q,
                            const SearchConfig& base) {
  RunRecord rec;
  rec.config = config;
  SearchConfig cfg = base;
  try {
    Query pq = preprocess_query(q);
    if (config == "interp")
      rec.result = solve_uniform(p.pre, pq, cfg);
    else if (config == "interp-raw")
      rec.result = solve_uniform(p.raw, q, cfg);
    else if (config == "l0")
      rec.result = solve_l0(p.l0, compile_goal_l0(pq.goal), q.vars, cfg);
    else if (config == "l1")
      rec.result = solve_l1(p.l1, compile_goal_l1(pq.goal), q.vars, cfg);
    else if (config == "l1-fused")
      rec.result = solve_l1_fused(p.l1, compile_goal_l1(pq.goal), q.vars, cfg);
    else if (config == "l1-opt")
      rec.result = solve_l1(p.l1_opt, optimize_l1_goal(compile_goal_l1(pq.goal)), q.vars, cfg);
    else if (config == "l2")
      rec.result = solve_l2(p.l2, compile_goal_l2(pq.goal), q.vars, cfg);
    else if (config == "l2-fused")
      rec.result = solve_l2_fused(p.l2, compile_goal_l2(pq.goal), q.vars, cfg);
    else if (config == "l2-strict") {
      cfg.strict_match = true;
      rec.result = solve_l2(p.l2, compile_goal_l2(pq.goal), q.vars, cfg);
    } else
      throw std::invalid_argument("unknown configuration '" + config + "'");
  } catch (const std::exception& e) {
    rec.error = true;
    rec.message = e.what();
  }
  for (const auto& s : rec.result.solutions) rec.answers.push_back(s.key());
  std::sort(rec.answers.begin(), rec.answers.end());
  return rec;
}

// True if every input argument of the query's atom is ground.
inline bool ground_inputs(const Query& q) {
  if (q.goal->kind != Kind::Atom) return false;
  for (const auto& a : q.goal->atom.args)
    if (a.mode != Mode::Out && a.term->has_vars) return false;
  return true;
}

struct Mismatch {
  std::size_t program = 0;
  std::size_t query = 0;
  std::string config;
  std::string reference;
  std::string detail;
};

struct QueryReport {
  std::size_t program = 0;
  std::size_t query = 0;
  std::string query_text;
  std::vector<RunRecord> runs;
};

struct DiffReport {
  std::vector<QueryReport> queries;
  std::vector<Mismatch> mismatches;
  std::size_t compared = 0;  // pairwise comparisons made
  std::size_t exact = 0;     // of which both runs were exhaustive
  std::size_t skipped = 0;   // pairs where neither run was exhaustive
  std::size_t programs = 0;
  std::size_t match_only_queries = 0;  // well-moded program, ground inputs
  std::uint64_t match_only_nonground_events = 0;

  bool pass() const { return mismatches.empty(); }
};

struct DiffOptions {
  DiffOptions() { search.max_solutions = 16; }

  SearchConfig search;
  std::vector<std::string> configs = all_configs();
  // Test hook: alters the prepared program before the runs.
  std::function<void(Prepared&)> mutate;
};

namespace detail {

inline bool sub_multiset(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::string show(const std::vector<std::string>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
  return s + "}";
}

}  // namespace detail

// Compares run `b` against run `a`. Exhaustive pairs must agree exactly; if
// only one run is exhaustive the other's answers must be among its answers.
// With `strict`, the runs must be identical however they ended.
inline void compare_runs(const RunRecord& a, const RunRecord& b, bool strict, std::size_t pi,
                         std::size_t qi, DiffReport& rep) {
  auto fail = [&](std::string why) { rep.mismatches.push_back({pi, qi, b.config, a.config, std::move(why)}); };
  if (a.error || b.error) {
    ++rep.compared;
    fail("error: " + (a.error ? a.message : b.message));
    return;
  }
  if (strict) {
    ++rep.compared;
    std::vector<std::string> ka, kb;
    for (const auto& s : a.result.solutions) ka.push_back(s.key());
    for (const auto& s : b.result.solutions) kb.push_back(s.key());
    if (ka != kb || a.result.incomplete != b.result.incomplete || a.result.truncated != b.result.truncated)
      fail("not identical: " + detail::show(ka) + " vs " + detail::show(kb));
    return;
  }
  if (a.exhaustive() && b.exhaustive()) {
    ++rep.compared;
    ++rep.exact;
    if (a.answers != b.answers) fail("answers differ: " + detail::show(a.answers) + " vs " + detail::show(b.answers));
  } else if (a.exhaustive()) {
    ++rep.compared;
    if (!detail::sub_multiset(b.answers, a.answers))
      fail("answers not among reference: " + detail::show(b.answers) + " vs " + detail::show(a.answers));
  } else if (b.exhaustive()) {
    ++rep.compared;
    if (!detail::sub_multiset(a.answers, b.answers))
      fail("reference answers missing: " + detail::show(a.answers) + " vs " + detail::show(b.answers));
  } else {
    ++rep.skipped;
  }
}

// Runs every configuration on every query of a program and compares them:
// each against the interpreter, and fused modes strictly against their
// small-step counterparts.
inline void diff_program(const SourceProgram& prog, const std::vector<Query>& queries,
                         const std::vector<std::string>& query_texts, std::size_t pi,
                         const DiffOptions& opt, DiffReport& rep) {
  Prepared p(prog);
  if (opt.mutate) opt.mutate(p);
  const bool well_moded = check_well_moded(p.pre, true).well_moded;
  const SearchConfig& cfg = opt.search;
  ++rep.programs;
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    QueryReport qr;
    qr.program = pi;
    qr.query = qi;
    qr.query_text = qi < query_texts.size() ? query_texts[qi] : pretty_print(queries[qi].goal);
    // Strict matching only applies to well-moded programs called with
    // ground inputs; elsewhere unification fallback is expected.
    const bool match_only = well_moded && ground_inputs(queries[qi]);
    std::map<std::string, std::size_t> at;
    for (const auto& c : opt.configs) {
      if (c == "l2-strict" && !match_only) continue;
      at[c] = qr.runs.size();
      qr.runs.push_back(run_config(c, p, queries[qi], cfg));
      if (match_only && (c == "l2" || c == "l2-fused")) {
        rep.match_only_queries += c == "l2";
        rep.match_only_nonground_events += qr.runs.back().result.counters.nonground_match_lhs_events;
      }
    }
    auto run = [&](const std::string& c) -> const RunRecord* {
      auto it = at.find(c);
      return it == at.end() ? nullptr : &qr.runs[it->second];
    };
    const RunRecord* ref = run("interp");
    for (const auto& r : qr.runs)
      if (ref && &r != ref) compare_runs(*ref, r, false, pi, qi, rep);
    const std::pair<const char*, const char*> strict_pairs[] = {
        {"l1", "l1-fused"}, {"l2", "l2-fused"}, {"l2", "l2-strict"}};
    for (const auto& [a, b] : strict_pairs)
      if (run(a) && run(b)) compare_runs(*run(a), *run(b), true, pi, qi, rep);
    rep.queries.push_back(std::move(qr));
  }
}

inline DiffReport diff_pipelines(const SourceProgram& prog, const std::vector<Query>& queries,
                                 const DiffOptions& opt = {}) {
  DiffReport rep;
  diff_program(prog, queries, {}, 0, opt, rep);
  return rep;
}

inline DiffReport diff_corpus(const std::vector<CorpusItem>& corpus, const DiffOptions& opt = {}) {
  DiffReport rep;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    diff_program(corpus[i].program, corpus[i].queries, corpus[i].query_texts, i, opt, rep);
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const Counters& c) {
  nlohmann::json j;
  j["unify"] = c.unify_events;
  j["match"] = c.match_events;
  j["assign"] = c.assign_events;
  j["nonground_match_lhs"] = c.nonground_match_lhs_events;
  j["bound_assign"] = c.bound_assign_events;
  return j;
}

inline nlohmann::json to_json(const DiffReport& r) {
  nlohmann::json j;
  j["verdict"] = r.pass() ? "pass" : "fail";
  j["programs"] = r.programs;
  j["compared"] = r.compared;
  j["exact"] = r.exact;
  j["skipped"] = r.skipped;
  j["match_only_queries"] = r.match_only_queries;
  j["match_only_nonground_match_lhs_events"] = r.match_only_nonground_events;
  j["mismatches"] = nlohmann::json::array();
  for (const auto& m : r.mismatches)
    j["mismatches"].push_back(
        {{"program", m.program}, {"query", m.query}, {"config", m.config}, {"reference", m.reference}, {"detail", m.detail}});
  j["queries"] = nlohmann::json::array();
  for (const auto& q : r.queries) {
    nlohmann::json jq;
    jq["program"] = q.program;
    jq["query"] = q.query;
    jq["text"] = q.query_text;
    for (const auto& run : q.runs) {
      nlohmann::json jr;
      jr["solvable"] = run.solvable();
      jr["incomplete"] = run.result.incomplete;
      jr["truncated"] = run.result.truncated;
      jr["answers"] = run.answers;
      jr["counters"] = to_json(run.result.counters);
      if (run.error) jr["error"] = run.message;
      jq["runs"][run.config] = jr;
    }
    j["queries"].push_back(jq);
  }
  return j;
}

}  // namespace lpc
