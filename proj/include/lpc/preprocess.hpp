#pragma once

#include <vector>

#include "lpc/formula.hpp"

namespace lpc {

inline Formula normalize_goal(const Formula& g);

// Splits a clause into conjunction- and truth-free clauses. ∧ distributes
// over the consequent of ⊃ and over ∀; a clause without a head vanishes.
inline std::vector<Formula> distribute(const Formula& a) {
  switch (a->kind) {
    case Kind::True:
      return {};
    case Kind::And: {
      auto l = distribute(a->left);
      auto r = distribute(a->right);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case Kind::Imp: {
      Formula g = normalize_goal(a->left);
      std::vector<Formula> out;
      for (auto& c : distribute(a->right)) out.push_back(imp(g, c));
      return out;
    }
    case Kind::All: {
      std::vector<Formula> out;
      for (auto& c : distribute(a->left)) out.push_back(all(a->name, c));
      return out;
    }
    default:
      return {a};
  }
}

// Goal positions keep ∧ and ⊤; only the clauses embedded by ⊃ are split.
// With clauses c1..cn the hypothetical goal becomes cn ⊃ … ⊃ c1 ⊃ G.
inline Formula normalize_goal(const Formula& g) {
  switch (g->kind) {
    case Kind::Imp: {
      Formula body = normalize_goal(g->right);
      for (auto& c : distribute(g->left)) body = imp(c, body);
      return body;
    }
    case Kind::All:
      return with_children(g, normalize_goal(g->left));
    case Kind::And:
      return with_children(g, normalize_goal(g->left), normalize_goal(g->right));
    default:
      return g;
  }
}

inline SourceProgram preprocess_program(const SourceProgram& p) {
  SourceProgram out;
  out.modes = p.modes;
  for (const auto& c : p.clauses)
    for (auto& d : distribute(c)) out.clauses.push_back(d);
  return out;
}

inline Query preprocess_query(const Query& q) { return {normalize_goal(q.goal), q.vars}; }

// True if no ∧/⊤ occurs in a clause position of `a`.
inline bool clause_normal(const Formula& a);

inline bool goal_normal(const Formula& g) {
  switch (g->kind) {
    case Kind::Imp: return clause_normal(g->left) && goal_normal(g->right);
    case Kind::All: return goal_normal(g->left);
    case Kind::And: return goal_normal(g->left) && goal_normal(g->right);
    default: return true;
  }
}

inline bool clause_normal(const Formula& a) {
  switch (a->kind) {
    case Kind::And:
    case Kind::True: return false;
    case Kind::Imp: return goal_normal(a->left) && clause_normal(a->right);
    case Kind::All: return clause_normal(a->left);
    default: return true;
  }
}

}  // namespace lpc
