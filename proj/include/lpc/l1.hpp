#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lpc/compile_common.hpp"
#include "lpc/search.hpp"

namespace lpc {

// ---------------------------------------------------------------------------
// Compilation

namespace l1 {

inline Formula goal(const Formula& a, int level);

// Head p t1 … tn becomes ∀x1…∀xn.(□ ⊃ p x1 … xn) with the equalities
// ((⊤ ∧ x1 ≐ t1) ∧ …) ∧ xn ≐ tn. Embedded clauses get primed names.
inline std::pair<PseudoClause, Formula> head(const Atom& a, int level) {
  PseudoClause pc;
  pc.head.pred = a.pred;
  Formula e = truth();
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    std::string x = "x" + std::to_string(i + 1) + detail::primes(level);
    pc.prefix.push_back(x);
    pc.head.args.push_back({var(x), a.args[i].mode});
    e = conj(e, eq(var(x), a.args[i].term));
  }
  return {pc, e};
}

inline std::pair<PseudoClause, Formula> clause(const Formula& a, int level) {
  switch (a->kind) {
    case Kind::Atom: return head(a->atom, level);
    case Kind::Imp: {
      auto [pc, r] = clause(a->right, level);
      return {pc, conj(r, goal(a->left, level))};
    }
    case Kind::All: {
      auto [pc, r] = clause(a->left, level);
      return {pc, exists(a->name, r)};
    }
    case Kind::And:
    case Kind::True: detail::unpreprocessed(a);
    default: throw CompileError(CompileError::Kind::IllFormed, "not a source clause");
  }
}

inline Formula goal(const Formula& a, int level) {
  switch (a->kind) {
    case Kind::Atom:
    case Kind::True: return a;
    case Kind::Imp: {
      auto [pc, r] = clause(a->left, level + 1);
      return imp(instantiate_hole(pc, r), goal(a->right, level));
    }
    case Kind::All: return all(a->name, goal(a->left, level));
    case Kind::And: return conj(goal(a->left, level), goal(a->right, level));
    default: throw CompileError(CompileError::Kind::IllFormed, "not a source goal");
  }
}

}  // namespace l1

inline std::pair<PseudoClause, Formula> compile_head_l1(const Atom& a, int level = 0) {
  return l1::head(a, level);
}

inline std::pair<PseudoClause, Formula> compile_clause_l1(const Formula& a) {
  return l1::clause(detail::sanitize(a), 0);
}

inline Formula compile_goal_l1(const Formula& a) { return l1::goal(detail::sanitize(a), 0); }

inline CompiledProgram compile_program_l1(const SourceProgram& p) {
  CompiledProgram out;
  for (const auto& c : p.clauses) {
    auto [pc, r] = compile_clause_l1(c);
    out.clauses.push_back(instantiate_hole(pc, r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical clause shape ∀x⃗.(R ⊃ p x⃗)

struct ClauseShape {
  std::vector<std::string> prefix;
  std::vector<std::size_t> position;  // prefix[i] is head argument position[i]
  Formula body;
  const Atom* head = nullptr;
};

// Decomposes a compiled clause; throws MalformedClause if it is not
// canonical (head over distinct variables, exactly those of the prefix).
inline ClauseShape clause_shape(const Formula& c) {
  ClauseShape s;
  const FormulaNode* f = c.get();
  while (f->kind == Kind::All) {
    s.prefix.push_back(f->name);
    f = f->left.get();
  }
  if (f->kind != Kind::Imp || f->right->kind != Kind::Atom)
    throw MalformedClause("clause is not of the form forall x. (R => p x)");
  s.body = f->left;
  s.head = &f->right->atom;
  if (s.head->args.size() != s.prefix.size())
    throw MalformedClause("head of '" + s.head->pred + "' does not match its quantifier prefix");
  s.position.assign(s.prefix.size(), 0);
  std::vector<bool> used(s.prefix.size(), false);
  for (std::size_t i = 0; i < s.prefix.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < s.head->args.size(); ++j) {
      const Term& t = s.head->args[j].term;
      if (!used[j] && t->kind == TermKind::Var && t->name == s.prefix[i]) {
        used[j] = true;
        s.position[i] = j;
        found = true;
        break;
      }
    }
    if (!found) throw MalformedClause("head of '" + s.head->pred + "' is not over distinct variables");
  }
  return s;
}

// ---------------------------------------------------------------------------
// Optimizer

namespace l1 {

inline Formula optimize_goal(const Formula& g);

// Rebuilds a left spine, dropping ⊤ where the result stays a residual.
inline Formula rebuild(std::vector<Formula> items) {
  std::vector<Formula> kept;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0 && items[i]->kind == Kind::True) continue;
    kept.push_back(items[i]);
  }
  if (kept.size() > 1 && kept[0]->kind == Kind::True &&
      (kept[1]->kind == Kind::Eq || kept[1]->kind == Kind::True))
    kept.erase(kept.begin());
  Formula f = kept[0];
  for (std::size_t i = 1; i < kept.size(); ++i) f = conj(f, kept[i]);
  return f;
}

inline Formula optimize_clause(const Formula& c) {
  std::vector<std::string> xs;
  const FormulaNode* n = c.get();
  while (n->kind == Kind::All) {
    xs.push_back(n->name);
    n = n->left.get();
  }
  if (n->kind != Kind::Imp) return c;
  Formula head = n->right;
  Formula r = n->left;

  std::vector<std::string> ys;
  while (r->kind == Kind::Exists) {
    ys.push_back(r->name);
    r = r->left;
  }
  std::vector<Formula> items;
  {
    Formula s = r;
    while (s->kind == Kind::And) {
      items.push_back(s->right);
      s = s->left;
    }
    items.push_back(s);
    std::reverse(items.begin(), items.end());
  }
  for (auto& it : items) it = optimize_goal(it);

  auto is_in = [](const std::vector<std::string>& v, const std::string& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  auto var_var = [&](const Formula& f, std::string* x, std::string* y) {
    if (f->kind != Kind::Eq || f->lhs->kind != TermKind::Var || f->rhs->kind != TermKind::Var)
      return false;
    if (!is_in(xs, f->lhs->name) || !is_in(ys, f->rhs->name)) return false;
    *x = f->lhs->name;
    *y = f->rhs->name;
    return true;
  };
  // The shadowing of y by an inner binder of the same name is left alone:
  // such a y is skipped.
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::string, int> uses;
    std::string x, y;
    for (const auto& it : items)
      if (var_var(it, &x, &y)) ++uses[y];
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (!var_var(items[i], &x, &y) || uses[y] != 1) continue;
      if (std::count(ys.begin(), ys.end(), y) != 1) continue;
      items.erase(items.begin() + static_cast<std::ptrdiff_t>(i));
      for (auto& it : items) it = substitute(var(x), y, it);
      ys.erase(std::find(ys.begin(), ys.end(), y));
      changed = true;
      break;
    }
  }
  Formula body = rebuild(items);
  for (auto it = ys.rbegin(); it != ys.rend(); ++it) body = exists(*it, body);
  Formula out = imp(body, head);
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) out = all(*it, out);
  return out;
}

inline Formula optimize_goal(const Formula& g) {
  switch (g->kind) {
    case Kind::Imp: return imp(optimize_clause(g->left), optimize_goal(g->right));
    case Kind::All: return with_children(g, optimize_goal(g->left));
    case Kind::And: return with_children(g, optimize_goal(g->left), optimize_goal(g->right));
    default: return g;
  }
}

}  // namespace l1

// Drops ⊤ conjuncts and eliminates x ≐ y constraints between a head
// variable x and an existential y when y has exactly one such constraint.
inline Formula optimize_l1(const Formula& c) { return l1::optimize_clause(c); }

inline Formula optimize_l1_goal(const Formula& g) { return l1::optimize_goal(g); }

inline CompiledProgram optimize_program_l1(const CompiledProgram& p) {
  CompiledProgram out;
  for (const auto& c : p.clauses) out.clauses.push_back(optimize_l1(c));
  return out;
}

// ---------------------------------------------------------------------------
// Search

class L1Solver : public SearchBase {
 public:
  L1Solver(const CompiledProgram& p, const SearchConfig& cfg, bool fused)
      : SearchBase(p.clauses, cfg), fused_(fused) {}

  SearchResult solve(const Formula& g, const std::vector<std::string>& vars) {
    return run_query(*this, g, vars);
  }

  bool goal(const Formula& g, int d, const Ctx* ctx, Cont k) { return judge(g, d, ctx, k, false); }

  // res: the formula is in residual position (R rather than G).
  bool judge(const Formula& g, int d, const Ctx* ctx, Cont k, bool res) {
    if (over(d)) return false;
    switch (g->kind) {
      case Kind::Atom:
        if (fused_) return backchain(g->atom, d, ctx, k);
        hit(Rule::g1_atm);
        return alternatives(ctx, [&](const Formula& c) { return focus(c, g->atom, d + 1, ctx, k); });
      case Kind::Imp: {
        hit(Rule::g1_imp);
        Ctx ext{g->left, ctx};
        return judge(g->right, d + 1, &ext, k, false);
      }
      case Kind::All:
        hit(Rule::g1_all);
        return judge(instantiate(g->left, g->name, store_.fresh_eigen()), d + 1, ctx, k, false);
      case Kind::Exists:
        hit(Rule::r1_exists);
        return judge(instantiate(g->left, g->name, store_.fresh_var()), d + 1, ctx, k, true);
      case Kind::And: {
        hit(res ? Rule::r1_and : Rule::g_and);
        auto right = [&]() { return judge(g->right, d + 1, ctx, k, false); };
        return judge(g->left, d + 1, ctx, Cont(right), res);
      }
      case Kind::True:
        hit(res ? Rule::r1_true : Rule::g_true);
        return leaf(d, k);
      case Kind::Eq:
        hit(Rule::r1_eq);
        if (store_.unify(g->lhs, g->rhs) != Outcome::Ok) return false;
        return leaf(d, k);
      default:
        throw std::logic_error("L1 solver: unexpected formula");
    }
  }

  bool focus(const Formula& c, const Atom& a, int d, const Ctx* ctx, Cont k) {
    if (over(d)) return false;
    switch (c->kind) {
      case Kind::All:
        hit(Rule::c1_all);
        return focus(instantiate(c->left, c->name, store_.fresh_var()), a, d + 1, ctx, k);
      case Kind::Imp:
        hit(Rule::c1_imp);
        if (c->right->kind != Kind::Atom || !bind_head(c->right->atom, a)) return false;
        return judge(c->left, d + 1, ctx, k, true);
      default:
        throw std::logic_error("L1 solver: not a clause");
    }
  }

 private:
  // g1_atm': one step from p t⃗ to [t⃗/x⃗]R. Depths are those the small-step
  // rules would reach: g1_atm at d, c1_all at d+1…d+n, c1_imp at d+n+1.
  bool backchain(const Atom& a, int d, const Ctx* ctx, Cont k) {
    hit(Rule::g1_atm_fused);
    return alternatives(ctx, [&](const Formula& c) {
      ClauseShape s = clause_shape(c);
      const int n = static_cast<int>(s.prefix.size());
      if (over(d + n + 1)) return false;
      if (s.head->pred != a.pred || s.head->args.size() != a.args.size()) return false;
      Substitution sub;
      for (std::size_t i = 0; i < s.prefix.size(); ++i)
        sub.emplace_back(s.prefix[i], a.args[s.position[i]].term);
      return judge(substitute_many(sub, s.body), d + n + 2, ctx, k, true);
    });
  }

  bool fused_;
};

inline SearchResult solve_l1(const CompiledProgram& p, const Formula& g,
                             const std::vector<std::string>& vars, const SearchConfig& cfg) {
  L1Solver s(p, cfg, false);
  return s.solve(g, vars);
}

inline SearchResult solve_l1_fused(const CompiledProgram& p, const Formula& g,
                                   const std::vector<std::string>& vars, const SearchConfig& cfg) {
  L1Solver s(p, cfg, true);
  return s.solve(g, vars);
}

}  // namespace lpc
