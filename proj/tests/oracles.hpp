#pragma once

// Independent reference implementations used only by the tests.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lpc/lpc.hpp"

namespace oracle {

using lpc::Term;
using lpc::TermKind;

// ---------------------------------------------------------------------------
// Robinson unification over logical variables, with an explicit idempotent
// substitution map. Deliberately naive: every step re-applies the map.

using Subst = std::map<std::uint32_t, Term>;

inline Term subst_apply(const Term& t, const Subst& s) {
  switch (t->kind) {
    case TermKind::Logic: {
      auto it = s.find(t->id);
      return it == s.end() ? t : subst_apply(it->second, s);
    }
    case TermKind::App:
      return lpc::app(subst_apply(t->head, s), subst_apply(t->arg, s));
    default:
      return t;
  }
}

inline bool occurs(std::uint32_t v, const Term& t) {
  if (t->kind == TermKind::Logic) return t->id == v;
  if (t->kind == TermKind::App) return occurs(v, t->head) || occurs(v, t->arg);
  return false;
}

inline bool same(const Term& a, const Term& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Logic: return a->id == b->id;
    case TermKind::App: return same(a->head, b->head) && same(a->arg, b->arg);
    default: return a->name == b->name && a->id == b->id;
  }
}

inline std::optional<Subst> robinson(const Term& a0, const Term& b0, Subst s = {}) {
  std::vector<std::pair<Term, Term>> eqs{{a0, b0}};
  while (!eqs.empty()) {
    auto [a, b] = eqs.back();
    eqs.pop_back();
    a = subst_apply(a, s);
    b = subst_apply(b, s);
    if (same(a, b)) continue;
    if (b->kind == TermKind::Logic && a->kind != TermKind::Logic) std::swap(a, b);
    if (a->kind == TermKind::Logic) {
      if (occurs(a->id, b)) return std::nullopt;
      Subst next;
      Subst one{{a->id, b}};
      for (auto& [v, t] : s) next[v] = subst_apply(t, one);
      next[a->id] = b;
      s = std::move(next);
      continue;
    }
    if (a->kind == TermKind::App && b->kind == TermKind::App) {
      eqs.emplace_back(a->head, b->head);
      eqs.emplace_back(a->arg, b->arg);
      continue;
    }
    return std::nullopt;
  }
  return s;
}

// One-way matching: is there θ with general·θ = specific (componentwise)?
inline bool instance_of(const std::vector<Term>& general, const std::vector<Term>& specific) {
  Subst theta;
  std::function<bool(const Term&, const Term&)> go = [&](const Term& g, const Term& t) -> bool {
    if (g->kind == TermKind::Logic) {
      auto it = theta.find(g->id);
      if (it == theta.end()) {
        theta[g->id] = t;
        return true;
      }
      return same(it->second, t);
    }
    if (g->kind != t->kind) return false;
    if (g->kind == TermKind::App) return go(g->head, t->head) && go(g->arg, t->arg);
    return g->name == t->name && g->id == t->id;
  };
  for (std::size_t i = 0; i < general.size(); ++i)
    if (!go(general[i], specific[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Random terms

struct TermGen {
  std::mt19937_64 rng;
  explicit TermGen(std::uint64_t seed) : rng(seed) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  // Terms over the given logical variables, constants a b c, f/1 and g/2.
  Term term(int depth, const std::vector<Term>& vars) {
    int r = pick(0, 9);
    if (depth <= 0 || r < 4) {
      if (!vars.empty() && r < 2) return vars[static_cast<std::size_t>(pick(0, static_cast<int>(vars.size()) - 1))];
      static const char* cs[] = {"a", "b", "c"};
      return lpc::cnst(cs[pick(0, 2)]);
    }
    if (r < 7) return lpc::app(lpc::cnst("f"), term(depth - 1, vars));
    return lpc::apply(lpc::cnst("g"), {term(depth - 1, vars), term(depth - 1, vars)});
  }

  // Source-level terms over named variables.
  Term source_term(int depth, const std::vector<std::string>& names) {
    std::vector<Term> vs;
    for (const auto& n : names) vs.push_back(lpc::var(n));
    return term(depth, vs);
  }

  Term ground(int depth) { return term(depth, {}); }
};

// ---------------------------------------------------------------------------
// Brute-force append: enumerate candidate lists and check each against the
// two rules directly.

inline Term list(const std::vector<std::string>& xs) {
  Term t = lpc::cnst("nil");
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) t = lpc::apply(lpc::cnst("cons"), {lpc::cnst(*it), t});
  return t;
}

inline bool append_holds(const Term& a, const Term& b, const Term& c, int fuel) {
  if (fuel <= 0) return false;
  if (a->kind == TermKind::Const && a->name == "nil") return same(b, c);
  std::vector<Term> xa, xc;
  Term ha = lpc::spine(a, xa);
  Term hc = lpc::spine(c, xc);
  if (ha->name != "cons" || hc->name != "cons" || xa.size() != 2 || xc.size() != 2) return false;
  return same(xa[0], xc[0]) && append_holds(xa[1], b, xc[1], fuel - 1);
}

inline std::vector<Term> all_lists(const std::vector<std::string>& alphabet, int max_len) {
  std::vector<std::vector<std::string>> level{{}};
  std::vector<Term> out{list({})};
  for (int n = 1; n <= max_len; ++n) {
    std::vector<std::vector<std::string>> next;
    for (const auto& l : level)
      for (const auto& a : alphabet) {
        auto m = l;
        m.push_back(a);
        out.push_back(list(m));
        next.push_back(std::move(m));
      }
    level = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Running the focused judgment of a compiled clause directly.

template <class Solver>
class Focus : public Solver {
 public:
  using Solver::Solver;

  bool entails(const lpc::Formula& clause, const lpc::Atom& a) {
    bool found = false;
    auto k = [&]() {
      found = true;
      return true;
    };
    this->focus(clause, a, 1, nullptr, lpc::Cont(k));
    return found;
  }
};

}  // namespace oracle
