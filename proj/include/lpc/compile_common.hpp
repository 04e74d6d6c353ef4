#pragma once

#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "lpc/errors.hpp"
#include "lpc/formula.hpp"
#include "lpc/subst.hpp"

namespace lpc {

// ∀x⃗.(□ ⊃ p x⃗′): a compiled clause with a hole where the body goes.
struct PseudoClause {
  std::vector<std::string> prefix;  // outermost first
  Atom head;
};

// 𝒞[R]. Free occurrences of prefix variables in R are captured on purpose.
inline Formula instantiate_hole(const PseudoClause& c, const Formula& r) {
  Formula f = imp(r, atom_f(c.head));
  for (auto it = c.prefix.rbegin(); it != c.prefix.rend(); ++it) f = all(*it, f);
  return f;
}

namespace detail {

inline std::string primes(int level) { return std::string(static_cast<std::size_t>(level), '\''); }

// Names the compilers invent: x1, x2', z3, …
inline bool reserved_name(const std::string& n) {
  if (n.size() < 2 || (n[0] != 'x' && n[0] != 'z')) return false;
  std::size_t i = 1;
  if (!std::isdigit(static_cast<unsigned char>(n[i]))) return false;
  while (i < n.size() && std::isdigit(static_cast<unsigned char>(n[i]))) ++i;
  while (i < n.size() && n[i] == '\'') ++i;
  return i == n.size();
}

// Renames source binders that could collide with compiler-made names.
inline Formula sanitize(const Formula& f) {
  switch (f->kind) {
    case Kind::All:
    case Kind::Exists: {
      Formula body = sanitize(f->left);
      if (!reserved_name(f->name)) return with_children(f, body);
      std::set<std::string> avoid;
      all_names(body, avoid);
      std::string fresh = fresh_name(f->name + "_", avoid);
      body = substitute(var(fresh), f->name, body);
      auto n = std::make_shared<FormulaNode>(*f);
      n->name = fresh;
      n->left = body;
      return finish(std::move(n));
    }
    case Kind::Imp:
    case Kind::And:
      return with_children(f, sanitize(f->left), sanitize(f->right));
    case Kind::Lam:
      return with_children(f, sanitize(f->left));
    default:
      return f;
  }
}

[[noreturn]] inline void unpreprocessed(const Formula& f) {
  throw CompileError(CompileError::Kind::UnpreprocessedConnective,
                     std::string(f->kind == Kind::And ? "conjunction" : "truth") +
                         " in clause position; run the distribution pass first");
}

}  // namespace detail

}  // namespace lpc
