#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lpc/formula.hpp"
#include "lpc/term.hpp"

namespace lpc {

using Substitution = std::vector<std::pair<std::string, Term>>;

// ---------------------------------------------------------------------------
// Free variables

namespace detail {

inline void free_vars_rec(const Formula& f, std::vector<std::string>& bound,
                          std::vector<std::string>& out) {
  if (!f->has_vars) return;
  auto add_term = [&](const Term& t) {
    std::vector<std::string> vs;
    collect_vars(t, vs);
    for (auto& v : vs) {
      if (std::find(bound.begin(), bound.end(), v) != bound.end()) continue;
      if (std::find(out.begin(), out.end(), v) != out.end()) continue;
      out.push_back(v);
    }
  };
  switch (f->kind) {
    case Kind::Atom:
    case Kind::EqAtom:
      for (const auto& a : f->atom.args) add_term(a.term);
      break;
    case Kind::Eq:
    case Kind::Mtch:
    case Kind::Assg:
      add_term(f->lhs);
      add_term(f->rhs);
      break;
    case Kind::All:
    case Kind::Exists:
      bound.push_back(f->name);
      free_vars_rec(f->left, bound, out);
      bound.pop_back();
      break;
    case Kind::Lam:
      free_vars_rec(f->left, bound, out);
      break;
    case Kind::Imp:
    case Kind::And:
      free_vars_rec(f->left, bound, out);
      free_vars_rec(f->right, bound, out);
      break;
    case Kind::True:
      break;
  }
}

}  // namespace detail

// Free term variables of `f` in first-occurrence order (left to right).
inline std::vector<std::string> free_vars(const Formula& f) {
  std::vector<std::string> bound, out;
  detail::free_vars_rec(f, bound, out);
  return out;
}

inline bool free_in(const Formula& f, const std::string& x) {
  if (!f->has_vars) return false;
  switch (f->kind) {
    case Kind::Atom:
    case Kind::EqAtom:
      for (const auto& a : f->atom.args)
        if (occurs_var(a.term, x)) return true;
      return false;
    case Kind::Eq:
    case Kind::Mtch:
    case Kind::Assg:
      return occurs_var(f->lhs, x) || occurs_var(f->rhs, x);
    case Kind::All:
    case Kind::Exists:
      return f->name != x && free_in(f->left, x);
    case Kind::Lam:
      return free_in(f->left, x);
    case Kind::Imp:
    case Kind::And:
      return free_in(f->left, x) || free_in(f->right, x);
    case Kind::True:
      return false;
  }
  return false;
}

// All binder and variable names anywhere in `f`.
inline void all_names(const Formula& f, std::set<std::string>& out) {
  auto add_term = [&](const Term& t) {
    std::vector<std::string> vs;
    collect_vars(t, vs);
    out.insert(vs.begin(), vs.end());
  };
  switch (f->kind) {
    case Kind::Atom:
    case Kind::EqAtom:
      for (const auto& a : f->atom.args) add_term(a.term);
      break;
    case Kind::Eq:
    case Kind::Mtch:
    case Kind::Assg:
      add_term(f->lhs);
      add_term(f->rhs);
      break;
    case Kind::All:
    case Kind::Exists:
      out.insert(f->name);
      all_names(f->left, out);
      break;
    case Kind::Lam:
      all_names(f->left, out);
      break;
    case Kind::Imp:
    case Kind::And:
      all_names(f->left, out);
      all_names(f->right, out);
      break;
    case Kind::True:
      break;
  }
}

// `base` primed until it avoids every name in `avoid`.
inline std::string fresh_name(std::string base, const std::set<std::string>& avoid) {
  while (avoid.count(base)) base += '\'';
  return base;
}

// ---------------------------------------------------------------------------
// Substitution

inline Term substitute_term(const Term& t, const Substitution& s) {
  if (!t->has_vars || s.empty()) return t;
  switch (t->kind) {
    case TermKind::Var:
      for (const auto& [x, r] : s)
        if (x == t->name) return r;
      return t;
    case TermKind::App: {
      Term h = substitute_term(t->head, s);
      Term a = substitute_term(t->arg, s);
      if (h == t->head && a == t->arg) return t;
      return app(std::move(h), std::move(a));
    }
    default:
      return t;
  }
}

namespace detail {

inline Atom substitute_atom(const Atom& a, const Substitution& s, bool& changed) {
  Atom out;
  out.pred = a.pred;
  out.args.reserve(a.args.size());
  for (const auto& x : a.args) {
    Term t = substitute_term(x.term, s);
    if (t != x.term) changed = true;
    out.args.push_back({std::move(t), x.mode});
  }
  return out;
}

inline bool term_mentions(const Term& t, const std::string& name) { return occurs_var(t, name); }

inline Formula substitute_rec(const Formula& f, const Substitution& s) {
  if (!f->has_vars || s.empty()) return f;
  switch (f->kind) {
    case Kind::Atom:
    case Kind::EqAtom: {
      bool changed = false;
      Atom a = substitute_atom(f->atom, s, changed);
      if (!changed) return f;
      auto n = std::make_shared<FormulaNode>(*f);
      n->atom = std::move(a);
      return finish(std::move(n));
    }
    case Kind::Eq:
    case Kind::Mtch:
    case Kind::Assg: {
      Term l = substitute_term(f->lhs, s);
      Term r = substitute_term(f->rhs, s);
      if (l == f->lhs && r == f->rhs) return f;
      return constraint(f->kind, std::move(l), std::move(r));
    }
    case Kind::Imp:
    case Kind::And:
      return with_children(f, substitute_rec(f->left, s), substitute_rec(f->right, s));
    case Kind::Lam:
      return with_children(f, substitute_rec(f->left, s));
    case Kind::True:
      return f;
    case Kind::All:
    case Kind::Exists: {
      const std::string& y = f->name;
      Substitution inner;
      for (const auto& p : s)
        if (p.first != y && free_in(f->left, p.first)) inner.push_back(p);
      if (inner.empty()) return f;
      bool capture = false;
      for (const auto& p : inner)
        if (term_mentions(p.second, y)) capture = true;
      if (!capture) {
        Formula body = substitute_rec(f->left, inner);
        return with_children(f, std::move(body));
      }
      std::set<std::string> avoid;
      all_names(f->left, avoid);
      for (const auto& p : inner) {
        avoid.insert(p.first);
        std::vector<std::string> vs;
        collect_vars(p.second, vs);
        avoid.insert(vs.begin(), vs.end());
      }
      std::string y2 = fresh_name(y, avoid);
      inner.emplace_back(y, var(y2));
      Formula body = substitute_rec(f->left, inner);
      auto n = std::make_shared<FormulaNode>(*f);
      n->name = y2;
      n->left = std::move(body);
      return finish(std::move(n));
    }
  }
  return f;
}

}  // namespace detail

// Capture-avoiding [replacement/x]f.
inline Formula substitute(const Term& replacement, const std::string& x, const Formula& f) {
  return detail::substitute_rec(f, {{x, replacement}});
}

inline Term substitute(const Term& replacement, const std::string& x, const Term& t) {
  return substitute_term(t, {{x, replacement}});
}

// Simultaneous capture-avoiding substitution. Identifiers must be distinct.
inline Formula substitute_many(const Substitution& s, const Formula& f) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i].first == s[j].first)
        throw std::invalid_argument("substitute_many: duplicate identifier " + s[i].first);
  return detail::substitute_rec(f, s);
}

inline Term substitute_many(const Substitution& s, const Term& t) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i].first == s[j].first)
        throw std::invalid_argument("substitute_many: duplicate identifier " + s[i].first);
  return substitute_term(t, s);
}

// Replaces free `x` by a term with no Var nodes (a logical variable or an
// eigen-constant). No renaming can be needed, so this is the runtime path.
inline Formula instantiate(const Formula& f, const std::string& x, const Term& closed) {
  return detail::substitute_rec(f, {{x, closed}});
}

// ---------------------------------------------------------------------------
// Alpha equivalence

namespace detail {

struct AlphaEnv {
  std::vector<std::string> a, b;
  std::vector<std::string> alpha_a, alpha_b;
};

inline bool same_binding(const std::vector<std::string>& sa, const std::vector<std::string>& sb,
                         const std::string& x, const std::string& y) {
  int ia = -1, ib = -1;
  for (int i = static_cast<int>(sa.size()) - 1; i >= 0; --i)
    if (sa[static_cast<std::size_t>(i)] == x) {
      ia = i;
      break;
    }
  for (int i = static_cast<int>(sb.size()) - 1; i >= 0; --i)
    if (sb[static_cast<std::size_t>(i)] == y) {
      ib = i;
      break;
    }
  if (ia < 0 && ib < 0) return x == y;
  return ia == ib;
}

inline bool term_alpha(const Term& x, const Term& y, const AlphaEnv& env) {
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case TermKind::Var:
      return same_binding(env.a, env.b, x->name, y->name);
    case TermKind::Const:
      return x->name == y->name;
    case TermKind::Logic:
      return x->id == y->id;
    case TermKind::App:
      return term_alpha(x->head, y->head, env) && term_alpha(x->arg, y->arg, env);
  }
  return false;
}

inline bool atom_alpha(const Atom& x, const Atom& y, const AlphaEnv& env) {
  if (x.pred != y.pred || x.args.size() != y.args.size()) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (!term_alpha(x.args[i].term, y.args[i].term, env)) return false;
  return true;
}

inline bool formula_alpha(const Formula& x, const Formula& y, AlphaEnv& env) {
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Kind::Atom:
      return atom_alpha(x->atom, y->atom, env);
    case Kind::EqAtom:
      return atom_alpha(x->atom, y->atom, env) &&
             same_binding(env.alpha_a, env.alpha_b, x->name, y->name);
    case Kind::Eq:
    case Kind::Mtch:
    case Kind::Assg:
      return term_alpha(x->lhs, y->lhs, env) && term_alpha(x->rhs, y->rhs, env);
    case Kind::True:
      return true;
    case Kind::Imp:
    case Kind::And:
      return formula_alpha(x->left, y->left, env) && formula_alpha(x->right, y->right, env);
    case Kind::All:
    case Kind::Exists: {
      env.a.push_back(x->name);
      env.b.push_back(y->name);
      bool r = formula_alpha(x->left, y->left, env);
      env.a.pop_back();
      env.b.pop_back();
      return r;
    }
    case Kind::Lam: {
      env.alpha_a.push_back(x->name);
      env.alpha_b.push_back(y->name);
      bool r = formula_alpha(x->left, y->left, env);
      env.alpha_a.pop_back();
      env.alpha_b.pop_back();
      return r;
    }
  }
  return false;
}

}  // namespace detail

// Equality up to consistent renaming of bound variables (term binders and
// Λ binders). Mode marks are not compared.
inline bool alpha_equal(const Formula& a, const Formula& b) {
  detail::AlphaEnv env;
  return detail::formula_alpha(a, b, env);
}

inline bool alpha_equal(const Term& a, const Term& b) {
  detail::AlphaEnv env;
  return detail::term_alpha(a, b, env);
}

}  // namespace lpc
