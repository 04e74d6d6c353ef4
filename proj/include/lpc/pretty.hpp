#pragma once

#include <string>
#include <vector>

#include "lpc/formula.hpp"
#include "lpc/term.hpp"

namespace lpc {

// Terms print in the concrete syntax: `f a (g b)`. Logical variables print as
// _N and eigen-constants as c#N; neither can be read back.

inline void pretty_term(const Term& t, std::string& out, bool nested = false) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Const:
      out += t->name;
      return;
    case TermKind::Logic:
      out += '_';
      out += std::to_string(t->id);
      return;
    case TermKind::App: {
      std::vector<Term> args;
      Term h = spine(t, args);
      if (nested) out += '(';
      pretty_term(h, out, true);
      for (const auto& a : args) {
        out += ' ';
        pretty_term(a, out, true);
      }
      if (nested) out += ')';
      return;
    }
  }
}

inline std::string pretty_print(const Term& t) {
  std::string s;
  pretty_term(t, s);
  return s;
}

namespace detail {

inline void pretty_atom(const Atom& a, std::string& out) {
  out += a.pred;
  for (const auto& x : a.args) {
    out += ' ';
    pretty_term(x.term, out, true);
  }
}

// Levels: 0 = anything, 1 = operand of `=>` (left) or `,`, 2 = atomic only.
inline int formula_level(const Formula& f) {
  switch (f->kind) {
    case Kind::Imp:
    case Kind::All:
    case Kind::Exists:
    case Kind::Lam:
      return 0;
    case Kind::And:
      return 1;
    default:
      return 2;
  }
}

inline void pretty_rec(const Formula& f, std::string& out, int need) {
  bool paren = formula_level(f) < need;
  if (paren) out += '(';
  switch (f->kind) {
    case Kind::Atom:
      pretty_atom(f->atom, out);
      break;
    case Kind::True:
      out += "true";
      break;
    case Kind::Imp:
      pretty_rec(f->left, out, 1);
      out += " => ";
      pretty_rec(f->right, out, 0);
      break;
    case Kind::And:
      pretty_rec(f->left, out, 1);
      out += ", ";
      pretty_rec(f->right, out, 2);
      break;
    case Kind::All:
      out += "all " + f->name + ". ";
      pretty_rec(f->left, out, 0);
      break;
    case Kind::Exists:
      out += "ex " + f->name + ". ";
      pretty_rec(f->left, out, 0);
      break;
    case Kind::Lam:
      out += "\\" + f->name + ". ";
      pretty_rec(f->left, out, 0);
      break;
    case Kind::EqAtom:
      pretty_atom(f->atom, out);
      out += " == " + f->name;
      break;
    case Kind::Eq:
      pretty_term(f->lhs, out, true);
      out += " = ";
      pretty_term(f->rhs, out, true);
      break;
    case Kind::Mtch:
      pretty_term(f->lhs, out, true);
      out += " =< ";
      pretty_term(f->rhs, out, true);
      break;
    case Kind::Assg:
      pretty_term(f->lhs, out, true);
      out += " := ";
      pretty_term(f->rhs, out, true);
      break;
  }
  if (paren) out += ')';
}

}  // namespace detail

// Source formulas print in the concrete syntax the parser accepts, with
// every quantifier explicit. Compiled forms use `ex`, `\alpha.`, `=`, `=<`,
// `:=`, `==`; those are for reading only.
inline std::string pretty_print(const Formula& f) {
  std::string s;
  detail::pretty_rec(f, s, 0);
  return s;
}

inline std::string pretty_print(const SourceProgram& p) {
  std::string s;
  for (const auto& [pred, decl] : p.modes) {
    s += "#mode " + pred + "(";
    for (std::size_t i = 0; i < decl.marks.size(); ++i) {
      if (i) s += ',';
      s += decl.marks[i] == Mode::Out ? '-' : '+';
    }
    s += ").\n";
  }
  for (const auto& c : p.clauses) s += pretty_print(c) + ".\n";
  return s;
}

}  // namespace lpc
