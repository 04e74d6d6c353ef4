#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lpc/compile_common.hpp"
#include "lpc/l1.hpp"
#include "lpc/search.hpp"

namespace lpc {

// ---------------------------------------------------------------------------
// Compilation

// A clause under compilation: 𝒞, the ∃-prefix y⃗ of the residual, the
// residual proper and the output assignments. It is plugged as
// 𝒞[∃y⃗.(R ∧ O)] so that O stays in the scope of y⃗.
struct Clause2Parts {
  PseudoClause pc;
  std::vector<std::string> ys;
  Formula r;
  Formula o;

  Formula plug() const {
    Formula body = conj(r, o);
    for (auto it = ys.rbegin(); it != ys.rend(); ++it) body = exists(*it, body);
    return instantiate_hole(pc, body);
  }
};

struct PseudoAtomicGoal {
  std::vector<std::string> prefix;  // z⃗, outermost first
  Atom call;

  Formula fill(const Formula& m) const {
    Formula f = conj(atom_f(call), m);
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) f = exists(*it, f);
    return f;
  }
};

namespace l2 {

struct Unit {
  int next_z = 1;
};

inline Formula goal(const Formula& a, int level, Unit& u);

inline std::tuple<PseudoClause, Formula, Formula> head(const Atom& a, int level) {
  PseudoClause pc;
  pc.head.pred = a.pred;
  Formula in = truth();
  Formula out = truth();
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    std::string x = "x" + std::to_string(i + 1) + detail::primes(level);
    pc.prefix.push_back(x);
    pc.head.args.push_back({var(x), a.args[i].mode});
    if (a.args[i].mode == Mode::Out)
      out = conj(assg(var(x), a.args[i].term), out);
    else
      in = conj(in, mtch(var(x), a.args[i].term));
  }
  return {pc, in, out};
}

inline std::pair<PseudoAtomicGoal, Formula> atomic(const Atom& a, Unit& u) {
  PseudoAtomicGoal f;
  f.call.pred = a.pred;
  Formula m = truth();
  for (const auto& arg : a.args) {
    if (arg.mode != Mode::Out) {
      f.call.args.push_back(arg);
      continue;
    }
    std::string z = "z" + std::to_string(u.next_z++);
    f.prefix.push_back(z);
    f.call.args.push_back({var(z), Mode::Out});
    m = conj(mtch(var(z), arg.term), m);
  }
  return {f, m};
}

inline Clause2Parts clause(const Formula& a, int level, Unit& u) {
  switch (a->kind) {
    case Kind::Atom: {
      auto [pc, in, out] = head(a->atom, level);
      return {pc, {}, in, out};
    }
    case Kind::Imp: {
      // The clause part first, so z's are numbered in body order.
      Clause2Parts p = clause(a->right, level, u);
      Formula g = goal(a->left, level, u);
      for (auto& y : p.ys) {
        if (!free_in(g, y)) continue;
        std::set<std::string> avoid;
        all_names(g, avoid);
        all_names(p.r, avoid);
        all_names(p.o, avoid);
        for (const auto& w : p.ys) avoid.insert(w);
        std::string fresh = fresh_name(y, avoid);
        p.r = substitute(var(fresh), y, p.r);
        p.o = substitute(var(fresh), y, p.o);
        y = fresh;
      }
      p.r = conj(p.r, g);
      return p;
    }
    case Kind::All: {
      Clause2Parts p = clause(a->left, level, u);
      p.ys.insert(p.ys.begin(), a->name);
      return p;
    }
    case Kind::And:
    case Kind::True: detail::unpreprocessed(a);
    default: throw CompileError(CompileError::Kind::IllFormed, "not a source clause");
  }
}

inline Formula goal(const Formula& a, int level, Unit& u) {
  switch (a->kind) {
    case Kind::Atom: {
      auto [f, m] = atomic(a->atom, u);
      return f.fill(m);
    }
    case Kind::True: return a;
    case Kind::Imp: {
      Clause2Parts p = clause(a->left, level + 1, u);
      return imp(p.plug(), goal(a->right, level, u));
    }
    case Kind::All: return all(a->name, goal(a->left, level, u));
    case Kind::And: {
      Formula l = goal(a->left, level, u);
      return conj(l, goal(a->right, level, u));
    }
    default: throw CompileError(CompileError::Kind::IllFormed, "not a source goal");
  }
}

}  // namespace l2

inline std::tuple<PseudoClause, Formula, Formula> compile_head_l2(const Atom& a, int level = 0) {
  return l2::head(a, level);
}

inline std::pair<PseudoAtomicGoal, Formula> compile_atomic_goal_l2(const Atom& a) {
  l2::Unit u;
  return l2::atomic(a, u);
}

inline Clause2Parts compile_clause_l2(const Formula& a) {
  l2::Unit u;
  return l2::clause(detail::sanitize(a), 0, u);
}

inline Formula compile_goal_l2(const Formula& a) {
  l2::Unit u;
  return l2::goal(detail::sanitize(a), 0, u);
}

inline CompiledProgram compile_program_l2(const SourceProgram& p) {
  CompiledProgram out;
  for (const auto& c : p.clauses) out.clauses.push_back(compile_clause_l2(c).plug());
  return out;
}

// ---------------------------------------------------------------------------
// Search

class L2Solver : public SearchBase {
 public:
  L2Solver(const CompiledProgram& p, const SearchConfig& cfg, bool fused)
      : SearchBase(p.clauses, cfg), fused_(fused) {}

  SearchResult solve(const Formula& g, const std::vector<std::string>& vars) {
    return run_query(*this, g, vars);
  }

  bool goal(const Formula& g, int d, const Ctx* ctx, Cont k) { return judge(g, d, ctx, k, false); }

  bool judge(const Formula& g, int d, const Ctx* ctx, Cont k, bool res) {
    if (over(d)) return false;
    switch (g->kind) {
      case Kind::Exists:
        if (res) {
          hit(Rule::r2_exists);
          return judge(instantiate(g->left, g->name, store_.fresh_var()), d + 1, ctx, k, true);
        }
        return call(g, d, ctx, k);
      case Kind::And:
        if (!res && g->left->kind == Kind::Atom) return call(g, d, ctx, k);
        {
          hit(res ? Rule::r2_and : Rule::g_and);
          auto right = [&]() { return judge(g->right, d + 1, ctx, k, false); };
          return judge(g->left, d + 1, ctx, Cont(right), res);
        }
      case Kind::Imp: {
        hit(Rule::g2_imp);
        Ctx ext{g->left, ctx};
        return judge(g->right, d + 1, &ext, k, false);
      }
      case Kind::All:
        hit(Rule::g2_all);
        return judge(instantiate(g->left, g->name, store_.fresh_eigen()), d + 1, ctx, k, false);
      case Kind::True:
        hit(res ? Rule::r2_true : Rule::g_true);
        return leaf(d, k);
      case Kind::Mtch:
        hit(Rule::r2_mtch);
        if (store_.match_lhs(g->lhs, g->rhs) != Outcome::Ok) return false;
        return leaf(d, k);
      case Kind::Assg:
        hit(Rule::r2_assg);
        if (store_.assign(g->lhs, g->rhs) != Outcome::Ok) return false;
        return leaf(d, k);
      default:
        throw std::logic_error("L2 solver: unexpected formula");
    }
  }

  bool focus(const Formula& c, const Atom& a, int d, const Ctx* ctx, Cont k) {
    if (over(d)) return false;
    switch (c->kind) {
      case Kind::All:
        hit(Rule::c2_all);
        return focus(instantiate(c->left, c->name, store_.fresh_var()), a, d + 1, ctx, k);
      case Kind::Imp:
        hit(Rule::c2_imp);
        if (c->right->kind != Kind::Atom || !bind_head(c->right->atom, a)) return false;
        return judge(c->left, d + 1, ctx, k, true);
      default:
        throw std::logic_error("L2 solver: not a clause");
    }
  }

  // F judgment: ∃z⃗.(p t⃗ z⃗ ∧ M).
  bool pseudo(const Formula& f, int d, const Ctx* ctx, Cont k) {
    if (over(d)) return false;
    if (f->kind == Kind::Exists) {
      hit(Rule::a2_exists);
      return pseudo(instantiate(f->left, f->name, store_.fresh_var()), d + 1, ctx, k);
    }
    if (f->kind != Kind::And || f->left->kind != Kind::Atom)
      throw std::logic_error("L2 solver: not an atomic goal");
    hit(Rule::a2_atm);
    const Formula& m = f->right;
    return alternatives(ctx, [&](const Formula& c) {
      auto then = [&]() { return matches(m, d + 1, k); };
      return focus(c, f->left->atom, d + 1, ctx, Cont(then));
    });
  }

  // M judgment. Matches are accepted on either side of the conjunction.
  bool matches(const Formula& m, int d, Cont k) {
    if (over(d)) return false;
    if (m->kind == Kind::True) {
      hit(Rule::m2_true);
      return leaf(d, k);
    }
    if (m->kind == Kind::And) {
      const Formula* mt = nullptr;
      const Formula* rest = nullptr;
      if (m->left->kind == Kind::Mtch) {
        mt = &m->left;
        rest = &m->right;
      } else if (m->right->kind == Kind::Mtch) {
        mt = &m->right;
        rest = &m->left;
      }
      if (mt) {
        hit(Rule::m2_mtch);
        if (store_.match_lhs((*mt)->lhs, (*mt)->rhs) != Outcome::Ok) return false;
        return matches(*rest, d + 1, k);
      }
    }
    throw std::logic_error("L2 solver: not a match block");
  }

 private:
  bool call(const Formula& g, int d, const Ctx* ctx, Cont k) {
    hit(Rule::g2_f);
    if (!fused_) return pseudo(g, d + 1, ctx, k);
    return call_fused(g, d, ctx, k);
  }

  // a2_atm' followed by g2_atm'. Depths replay the small-step derivation:
  // g2_f at d, a2_exists ×k, a2_atm at d+k+1, then the clause focus and the
  // match block at d+k+2.
  bool call_fused(const Formula& g, int d, const Ctx* ctx, Cont k) {
    const FormulaNode* f = g.get();
    std::vector<std::string> zs;
    while (f->kind == Kind::Exists) {
      zs.push_back(f->name);
      f = f->left.get();
    }
    if (f->kind != Kind::And || f->left->kind != Kind::Atom)
      throw std::logic_error("L2 solver: not an atomic goal");
    const int nz = static_cast<int>(zs.size());
    if (over(d + nz + 1)) return false;
    hit(Rule::a2_atm_fused);
    Substitution zsub;
    for (const auto& z : zs) zsub.emplace_back(z, store_.fresh_var());
    Formula body = substitute_many(zsub, Formula(g, f));
    const Atom& a = body->left->atom;
    const Formula& m = body->right;
    const int base = d + nz + 2;

    return alternatives(ctx, [&](const Formula& c) {
      ClauseShape s = clause_shape(c);
      const int n = static_cast<int>(s.prefix.size());
      if (over(base + n)) return false;
      if (s.head->pred != a.pred || s.head->args.size() != a.args.size()) return false;
      check_return_block(s);
      hit(Rule::g2_atm_fused);
      Substitution sub;
      for (std::size_t i = 0; i < s.prefix.size(); ++i)
        sub.emplace_back(s.prefix[i], a.args[s.position[i]].term);
      Formula r = substitute_many(sub, s.body);
      int m_ys = 0;
      for (const FormulaNode* e = r.get(); e->kind == Kind::Exists; e = e->left.get()) ++m_ys;
      if (over(base + n + m_ys + 1)) return false;
      while (r->kind == Kind::Exists) r = instantiate(r->left, r->name, store_.fresh_var());
      const int d0 = base + n + m_ys + 2;
      const Formula& o = r->right;
      auto then_match = [&]() { return matches(m, base, k); };
      auto then_ret = [&]() { return ret(o, d0, Cont(then_match)); };
      return judge(r->left, d0, ctx, Cont(then_ret), true);
    });
  }

  // The return block (x := s) ∧ … ∧ ⊤ of a clause body, evaluated at depth e
  // exactly as the g_and/r2_assg/g_true steps would.
  bool ret(const Formula& o, int e, Cont k) {
    if (over(e)) return false;
    if (o->kind == Kind::True) {
      hit(Rule::g_true);
      return leaf(e, k);
    }
    hit(Rule::g_and);
    if (over(e + 1)) return false;
    hit(Rule::r2_assg);
    if (store_.assign(o->left->lhs, o->left->rhs) != Outcome::Ok) return false;
    const Formula& rest = o->right;
    auto next = [&]() { return ret(rest, e + 1, k); };
    return leaf(e + 1, Cont(next));
  }

  static void check_return_block(const ClauseShape& s) {
    const FormulaNode* b = s.body.get();
    while (b->kind == Kind::Exists) b = b->left.get();
    if (b->kind != Kind::And)
      throw MalformedClause("body of '" + s.head->pred + "' has no return block");
    for (const FormulaNode* o = b->right.get(); o->kind != Kind::True; o = o->right.get()) {
      bool ok = o->kind == Kind::And && o->left->kind == Kind::Assg &&
                o->left->lhs->kind == TermKind::Var &&
                std::find(s.prefix.begin(), s.prefix.end(), o->left->lhs->name) != s.prefix.end();
      if (!ok) throw MalformedClause("return block of '" + s.head->pred + "' is malformed");
    }
  }

  bool fused_;
};

inline SearchResult solve_l2(const CompiledProgram& p, const Formula& g,
                             const std::vector<std::string>& vars, const SearchConfig& cfg) {
  L2Solver s(p, cfg, false);
  return s.solve(g, vars);
}

inline SearchResult solve_l2_fused(const CompiledProgram& p, const Formula& g,
                                   const std::vector<std::string>& vars, const SearchConfig& cfg) {
  L2Solver s(p, cfg, true);
  return s.solve(g, vars);
}

}  // namespace lpc
