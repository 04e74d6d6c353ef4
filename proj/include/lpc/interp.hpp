#pragma once

#include <stdexcept>
#include <vector>

#include "lpc/formula.hpp"
#include "lpc/search.hpp"
#include "lpc/subst.hpp"

namespace lpc {

// Reference interpreter: uniform provability and immediate entailment over
// source formulas. Also accepts ∧/⊤ anywhere, so unpreprocessed programs
// can be run directly.
class SourceSolver : public SearchBase {
 public:
  SourceSolver(const SourceProgram& p, const SearchConfig& cfg) : SearchBase(p.clauses, cfg) {}

  SearchResult solve(const Query& q) { return run_query(*this, q.goal, q.vars); }

  // Runs the focused judgment for one clause against an atom, with the
  // atom's free variables as query variables.
  SearchResult entail(const Formula& clause, const Atom& a, const std::vector<std::string>& vars) {
    focus_root_ = &clause;
    return run_query(*this, atom_f(a), vars);
  }

  bool goal(const Formula& g, int d, const Ctx* ctx, Cont k) {
    if (over(d)) return false;
    if (focus_root_) {
      // Entry point of entail(): the goal is the atom to focus on.
      Formula c = substitute_many(query_subst_, *focus_root_);
      focus_root_ = nullptr;
      return focus(c, g->atom, d, ctx, k);
    }
    switch (g->kind) {
      case Kind::Atom:
        hit(Rule::u_atm);
        return alternatives(ctx, [&](const Formula& c) { return focus(c, g->atom, d + 1, ctx, k); });
      case Kind::Imp: {
        hit(Rule::u_imp);
        Ctx ext{g->left, ctx};
        return goal(g->right, d + 1, &ext, k);
      }
      case Kind::All: {
        hit(Rule::u_all);
        Formula body = instantiate(g->left, g->name, store_.fresh_eigen());
        return goal(body, d + 1, ctx, k);
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
        throw std::logic_error("source solver: not a source goal");
    }
  }

  bool focus(const Formula& c, const Atom& a, int d, const Ctx* ctx, Cont k) {
    if (over(d)) return false;
    switch (c->kind) {
      case Kind::Atom:
        hit(Rule::i_atm);
        if (!unify_atoms(c->atom, a)) return false;
        return leaf(d, k);
      case Kind::Imp: {
        // Entailment premise first, then the goal premise.
        hit(Rule::i_imp);
        auto rest = [&]() { return goal(c->left, d + 1, ctx, k); };
        return focus(c->right, a, d + 1, ctx, Cont(rest));
      }
      case Kind::All: {
        hit(Rule::i_all);
        Formula body = instantiate(c->left, c->name, store_.fresh_var());
        return focus(body, a, d + 1, ctx, k);
      }
      case Kind::And: {
        hit(Rule::i_and);
        ChoicePoint cp(store_);
        if (focus(c->left, a, d + 1, ctx, k)) return true;
        cp.undo();
        return focus(c->right, a, d + 1, ctx, k);
      }
      case Kind::True:
        return false;
      default:
        throw std::logic_error("source solver: not a source clause");
    }
  }

 private:
  const Formula* focus_root_ = nullptr;
};

inline SearchResult solve_uniform(const SourceProgram& p, const Query& q, const SearchConfig& cfg) {
  SourceSolver s(p, cfg);
  return s.solve(q);
}

inline SearchResult immediate_entail(const SourceProgram& p, const Formula& clause, const Atom& a,
                                     const std::vector<std::string>& vars, const SearchConfig& cfg) {
  SourceSolver s(p, cfg);
  return s.entail(clause, a, vars);
}

}  // namespace lpc
