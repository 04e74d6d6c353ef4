#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "lpc/engine.hpp"
#include "lpc/formula.hpp"
#include "lpc/function_ref.hpp"
#include "lpc/subst.hpp"

namespace lpc {

struct SearchConfig {
  int max_depth = 30;             // bound on rule applications along one branch
  std::size_t max_solutions = 1;  // 0 means no limit
  bool strict_match = false;
  std::ostream* trace = nullptr;
};

struct Solution {
  // Query variable → answer. Unbound logical variables are renamed _0, _1, …
  // by first occurrence across the tuple, so equal answers compare equal.
  std::vector<std::pair<std::string, Term>> bindings;
  int depth_used = 0;  // height of the derivation that produced it

  std::string key() const {
    std::string s;
    for (const auto& [x, t] : bindings) {
      s += dump_sexpr(t);
      s += ';';
    }
    return s;
  }
};

struct SearchResult {
  std::vector<Solution> solutions;
  bool incomplete = false;  // some branch hit the depth bound
  bool truncated = false;   // stopped at max_solutions
  Counters counters;

  bool exhaustive() const { return !incomplete && !truncated; }
};

using Cont = FunctionRef<bool()>;

// Dynamic clauses added by hypothetical goals, most recent first.
struct Ctx {
  const Formula& clause;
  const Ctx* next;
};

namespace detail {

inline Term rename_open(const Term& t, std::vector<std::uint32_t>& seen) {
  if (!t->has_logic) return t;
  switch (t->kind) {
    case TermKind::Logic: {
      auto it = std::find(seen.begin(), seen.end(), t->id);
      std::size_t n = static_cast<std::size_t>(it - seen.begin());
      if (it == seen.end()) seen.push_back(t->id);
      return var("_" + std::to_string(n));
    }
    case TermKind::App:
      return app(rename_open(t->head, seen), rename_open(t->arg, seen));
    default:
      return t;
  }
}

}  // namespace detail

// Shared machinery of the five solvers: depth accounting, the proof-height
// tracker, clause enumeration and answer collection. Derived classes supply
// goal(G, d, ctx, k), which must call k() once per way of proving G and stop
// (returning true) as soon as k() does.
class SearchBase {
 public:
  SearchBase(const std::vector<Formula>& program, const SearchConfig& cfg)
      : program_(program), cfg_(cfg) {
    store_.strict_match = cfg.strict_match;
    store_.trace = cfg.trace;
  }

  BindingStore& store() { return store_; }

 protected:
  template <class Self>
  SearchResult run_query(Self& self, const Formula& goal, const std::vector<std::string>& vars) {
    Substitution s;
    std::vector<Term> lv;
    for (const auto& x : vars) {
      lv.push_back(store_.fresh_var());
      s.emplace_back(x, lv.back());
    }
    Formula g = substitute_many(s, goal);
    query_subst_ = s;
    SearchResult res;
    auto emit = [&]() -> bool {
      Solution sol;
      std::vector<std::uint32_t> seen;
      for (std::size_t i = 0; i < vars.size(); ++i)
        sol.bindings.emplace_back(vars[i], detail::rename_open(store_.resolve(lv[i]), seen));
      sol.depth_used = height_;
      res.solutions.push_back(std::move(sol));
      if (cfg_.max_solutions && res.solutions.size() >= cfg_.max_solutions) {
        res.truncated = true;
        return true;
      }
      return false;
    };
    self.goal(g, 1, nullptr, Cont(emit));
    res.incomplete = incomplete_;
    res.counters = store_.counters;
    return res;
  }

  // True (and the run is marked incomplete) if a rule at depth d is over budget.
  bool over(int d) {
    if (d > cfg_.max_depth) {
      incomplete_ = true;
      return true;
    }
    return false;
  }

  // Closes a branch at depth d: a rule with no premises succeeded.
  bool leaf(int d, Cont k) {
    int saved = height_;
    height_ = std::max(height_, d);
    bool stop = k();
    height_ = saved;
    return stop;
  }

  void hit(Rule r) { store_.counters.hit(r); }

  // Calls f(clause) for every clause in scope: dynamic ones from the most
  // recent, then the program in file order. Stops when f returns true.
  template <class F>
  bool each_clause(const Ctx* ctx, F&& f) {
    for (const Ctx* c = ctx; c; c = c->next)
      if (f(c->clause)) return true;
    for (const auto& c : program_)
      if (f(c)) return true;
    return false;
  }

  // Tries each alternative under one choice point, restoring bindings
  // between attempts.
  template <class F>
  bool alternatives(const Ctx* ctx, F&& attempt) {
    ChoicePoint cp(store_);
    return each_clause(ctx, [&](const Formula& c) {
      bool stop = attempt(c);
      if (!stop) cp.undo();
      return stop;
    });
  }

  // Unifies two atoms argument-wise with counted unification.
  bool unify_atoms(const Atom& a, const Atom& b) {
    if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (store_.unify(a.args[i].term, b.args[i].term) != Outcome::Ok) return false;
    return true;
  }

  // Head binding for compiled clauses: the head is p X⃗ over fresh
  // variables, so this only passes arguments and is not counted.
  bool bind_head(const Atom& head, const Atom& goal) {
    if (head.pred != goal.pred || head.args.size() != goal.args.size()) return false;
    for (std::size_t i = 0; i < head.args.size(); ++i)
      if (store_.unify_silent(head.args[i].term, goal.args[i].term) != Outcome::Ok) return false;
    return true;
  }

  const std::vector<Formula>& program_;
  const SearchConfig& cfg_;
  BindingStore store_;
  bool incomplete_ = false;
  int height_ = 0;
  Substitution query_subst_;  // query variable → its logical variable
};

}  // namespace lpc
