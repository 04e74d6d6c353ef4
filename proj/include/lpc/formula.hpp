#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lpc/term.hpp"

namespace lpc {

enum class Mode : std::uint8_t { Unmoded, In, Out };

struct Arg {
  Term term;
  Mode mode = Mode::Unmoded;
};

struct Atom {
  std::string pred;
  std::vector<Arg> args;

  std::size_t arity() const { return args.size(); }
};

// One node type serves the source language and all three compiled forms.
// Which kinds may appear where is a property of each language:
//
//   source     Atom Imp All And True
//   L0         Atom Imp All Exists And Lam EqAtom      (goals may also use And/True)
//   L1         Atom Imp All Exists And True Eq
//   L2         Atom Imp All Exists And True Mtch Assg
//
// Imp is always (antecedent, consequent): a compiled clause R ⊃ p x⃗ is
// Imp(R, Atom).
enum class Kind : std::uint8_t { Atom, Imp, All, Exists, And, True, Eq, Mtch, Assg, Lam, EqAtom };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  Kind kind;
  Atom atom;         // Atom, EqAtom
  std::string name;  // binder name (All, Exists, Lam); α reference (EqAtom)
  Formula left;      // Imp antecedent, And left, binder body
  Formula right;     // Imp consequent, And right
  Term lhs, rhs;     // Eq, Mtch, Assg
  bool has_vars = false;
  bool has_logic = false;
};

namespace detail {

inline bool atom_has_vars(const Atom& a) {
  for (const auto& x : a.args)
    if (x.term->has_vars) return true;
  return false;
}

inline bool atom_has_logic(const Atom& a) {
  for (const auto& x : a.args)
    if (x.term->has_logic) return true;
  return false;
}

inline Formula finish(std::shared_ptr<FormulaNode> n) {
  bool v = false, l = false;
  switch (n->kind) {
    case Kind::Atom:
    case Kind::EqAtom:
      v = atom_has_vars(n->atom);
      l = atom_has_logic(n->atom);
      break;
    case Kind::Eq:
    case Kind::Mtch:
    case Kind::Assg:
      v = n->lhs->has_vars || n->rhs->has_vars;
      l = n->lhs->has_logic || n->rhs->has_logic;
      break;
    case Kind::All:
    case Kind::Exists:
    case Kind::Lam:
      v = n->left->has_vars;
      l = n->left->has_logic;
      break;
    case Kind::Imp:
    case Kind::And:
      v = n->left->has_vars || n->right->has_vars;
      l = n->left->has_logic || n->right->has_logic;
      break;
    case Kind::True:
      break;
  }
  n->has_vars = v;
  n->has_logic = l;
  return n;
}

inline std::shared_ptr<FormulaNode> node(Kind k) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = k;
  return n;
}

}  // namespace detail

inline Formula atom_f(Atom a) {
  auto n = detail::node(Kind::Atom);
  n->atom = std::move(a);
  return detail::finish(std::move(n));
}

inline Formula imp(Formula antecedent, Formula consequent) {
  auto n = detail::node(Kind::Imp);
  n->left = std::move(antecedent);
  n->right = std::move(consequent);
  return detail::finish(std::move(n));
}

inline Formula all(std::string x, Formula body) {
  auto n = detail::node(Kind::All);
  n->name = std::move(x);
  n->left = std::move(body);
  return detail::finish(std::move(n));
}

inline Formula exists(std::string x, Formula body) {
  auto n = detail::node(Kind::Exists);
  n->name = std::move(x);
  n->left = std::move(body);
  return detail::finish(std::move(n));
}

inline Formula conj(Formula l, Formula r) {
  auto n = detail::node(Kind::And);
  n->left = std::move(l);
  n->right = std::move(r);
  return detail::finish(std::move(n));
}

inline Formula truth() {
  static const Formula t = detail::finish(detail::node(Kind::True));
  return t;
}

inline Formula constraint(Kind k, Term lhs, Term rhs) {
  auto n = detail::node(k);
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return detail::finish(std::move(n));
}

inline Formula eq(Term l, Term r) { return constraint(Kind::Eq, std::move(l), std::move(r)); }
inline Formula mtch(Term l, Term r) { return constraint(Kind::Mtch, std::move(l), std::move(r)); }
inline Formula assg(Term l, Term r) { return constraint(Kind::Assg, std::move(l), std::move(r)); }

inline Formula lam(std::string alpha, Formula body) {
  auto n = detail::node(Kind::Lam);
  n->name = std::move(alpha);
  n->left = std::move(body);
  return detail::finish(std::move(n));
}

inline Formula eq_atom(Atom head, std::string alpha) {
  auto n = detail::node(Kind::EqAtom);
  n->atom = std::move(head);
  n->name = std::move(alpha);
  return detail::finish(std::move(n));
}

// Rebuilds a binder or connective node with new children, keeping the rest.
inline Formula with_children(const Formula& f, Formula left, Formula right = nullptr) {
  if (left == f->left && right == f->right) return f;
  auto n = std::make_shared<FormulaNode>(*f);
  n->left = std::move(left);
  n->right = std::move(right);
  return detail::finish(std::move(n));
}

inline Atom make_atom(std::string pred, std::vector<Term> args) {
  Atom a;
  a.pred = std::move(pred);
  for (auto& t : args) a.args.push_back({std::move(t), Mode::Unmoded});
  return a;
}

// Predicate → (arity, marks). Marks are In/Out only.
struct ModeDecl {
  std::size_t arity = 0;
  std::vector<Mode> marks;
};
using ModeTable = std::map<std::string, ModeDecl>;

struct SourceProgram {
  std::vector<Formula> clauses;
  ModeTable modes;
};

struct Query {
  Formula goal;
  std::vector<std::string> vars;  // free query variables, first-occurrence order
};

// Compiled program of any target language: one formula per clause.
struct CompiledProgram {
  std::vector<Formula> clauses;
};

}  // namespace lpc
