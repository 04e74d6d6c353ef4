#pragma once

#include <stdexcept>
#include <string>

#include "lpc/compile_common.hpp"
#include "lpc/search.hpp"

namespace lpc {

// ---------------------------------------------------------------------------
// Compilation into Λα-clauses

namespace l0 {

inline std::string alpha_name(int level) {
  static const char* names[] = {"alpha", "beta", "gamma", "delta"};
  if (level < 4) return names[level];
  return "alpha" + std::to_string(level);
}

inline Formula goal(const Formula& a, int level);

inline Formula clause(const Formula& a, const std::string& alpha, int level) {
  switch (a->kind) {
    case Kind::Atom: return eq_atom(a->atom, alpha);
    case Kind::Imp: return conj(clause(a->right, alpha, level), goal(a->left, level));
    case Kind::All: return exists(a->name, clause(a->left, alpha, level));
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
      std::string beta = alpha_name(level + 1);
      return imp(lam(beta, clause(a->left, beta, level + 1)), goal(a->right, level));
    }
    case Kind::All: return all(a->name, goal(a->left, level));
    case Kind::And: return conj(goal(a->left, level), goal(a->right, level));
    default: throw CompileError(CompileError::Kind::IllFormed, "not a source goal");
  }
}

}  // namespace l0

inline Formula compile_clause_l0(const Formula& a) {
  return lam(l0::alpha_name(0), l0::clause(a, l0::alpha_name(0), 0));
}

inline Formula compile_goal_l0(const Formula& a) { return l0::goal(a, 0); }

inline CompiledProgram compile_program_l0(const SourceProgram& p) {
  CompiledProgram out;
  for (const auto& c : p.clauses) out.clauses.push_back(compile_clause_l0(c));
  return out;
}

// ---------------------------------------------------------------------------
// Search

class L0Solver : public SearchBase {
 public:
  L0Solver(const CompiledProgram& p, const SearchConfig& cfg) : SearchBase(p.clauses, cfg) {}

  SearchResult solve(const Formula& g, const std::vector<std::string>& vars) {
    return run_query(*this, g, vars);
  }

  bool goal(const Formula& g, int d, const Ctx* ctx, Cont k) {
    if (over(d)) return false;
    switch (g->kind) {
      case Kind::Atom:
        hit(Rule::g0_atm);
        return alternatives(ctx, [&](const Formula& c) {
          if (c->kind != Kind::Lam) throw std::logic_error("L0 clause without a binder");
          return instance(c->left, g->atom, d + 1, ctx, k);
        });
      case Kind::Imp: {
        hit(Rule::g0_imp);
        Ctx ext{g->left, ctx};
        return goal(g->right, d + 1, &ext, k);
      }
      case Kind::All: {
        hit(Rule::g0_all);
        return goal(instantiate(g->left, g->name, store_.fresh_eigen()), d + 1, ctx, k);
      }
      case Kind::And: {
        hit(Rule::g_and);
        auto right = [&]() { return goal(g->right, d + 1, ctx, k); };
        return goal(g->left, d + 1, ctx, Cont(right));
      }
      case Kind::True:
        hit(Rule::g_true);
        return leaf(d, k);
      default:
        throw std::logic_error("L0 solver: not a goal");
    }
  }

  // A clause body with α already standing for `a`.
  bool instance(const Formula& c, const Atom& a, int d, const Ctx* ctx, Cont k) {
    if (over(d)) return false;
    switch (c->kind) {
      case Kind::EqAtom:
        hit(Rule::r0_eq);
        if (!unify_atoms(c->atom, a)) return false;
        return leaf(d, k);
      case Kind::And: {
        hit(Rule::r0_and);
        auto right = [&]() { return goal(c->right, d + 1, ctx, k); };
        return instance(c->left, a, d + 1, ctx, Cont(right));
      }
      case Kind::Exists:
        hit(Rule::r0_exists);
        return instance(instantiate(c->left, c->name, store_.fresh_var()), a, d + 1, ctx, k);
      default:
        throw std::logic_error("L0 solver: not a clause instance");
    }
  }
};

inline SearchResult solve_l0(const CompiledProgram& p, const Formula& g,
                             const std::vector<std::string>& vars, const SearchConfig& cfg) {
  L0Solver s(p, cfg);
  return s.solve(g, vars);
}

}  // namespace lpc
