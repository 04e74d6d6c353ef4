#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace lpc {

// First-order applicative terms. Applications are curried: `f a b` is
// App(App(f, a), b). Logic nodes are engine-level logical variables and never
// come out of the parser.
enum class TermKind : std::uint8_t { Var, Const, App, Logic };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  TermKind kind;
  std::string name;        // Var, Const
  Term head;               // App
  Term arg;                // App
  std::uint32_t id = 0;    // Logic: variable index; Const: eigen id (0 = ordinary)
  bool has_vars = false;   // subtree contains a Var node
  bool has_logic = false;  // subtree contains a Logic node
};

inline Term var(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Var;
  n->name = std::move(name);
  n->has_vars = true;
  return n;
}

inline Term cnst(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Const;
  n->name = std::move(name);
  return n;
}

inline Term eigen_const(std::uint32_t id) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Const;
  n->name = "c#" + std::to_string(id);
  n->id = id;
  return n;
}

inline Term app(Term head, Term arg) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::App;
  n->has_vars = head->has_vars || arg->has_vars;
  n->has_logic = head->has_logic || arg->has_logic;
  n->head = std::move(head);
  n->arg = std::move(arg);
  return n;
}

inline Term logic_var(std::uint32_t id) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Logic;
  n->id = id;
  n->has_logic = true;
  return n;
}

// Left-nested application of `head` to `args`.
inline Term apply(Term head, const std::vector<Term>& args) {
  for (const auto& a : args) head = app(std::move(head), a);
  return head;
}

inline bool is_var(const Term& t) { return t->kind == TermKind::Var; }
inline bool is_eigen(const Term& t) { return t->kind == TermKind::Const && t->id != 0; }

// Structural equality. Logic variables compare by index; no dereferencing.
inline bool term_equal(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Var:
    case TermKind::Const:
      return a->name == b->name;
    case TermKind::Logic:
      return a->id == b->id;
    case TermKind::App:
      return term_equal(a->head, b->head) && term_equal(a->arg, b->arg);
  }
  return false;
}

// Splits `f a b` into f and [a, b].
inline Term spine(const Term& t, std::vector<Term>& args) {
  if (t->kind != TermKind::App) return t;
  Term h = spine(t->head, args);
  args.push_back(t->arg);
  return h;
}

inline int term_depth(const Term& t) {
  if (t->kind != TermKind::App) return 1;
  std::vector<Term> args;
  spine(t, args);
  int d = 0;
  for (const auto& a : args) d = std::max(d, term_depth(a));
  return d + 1;
}

inline void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (!t->has_vars) return;
  if (t->kind == TermKind::Var) {
    for (const auto& n : out)
      if (n == t->name) return;
    out.push_back(t->name);
    return;
  }
  if (t->kind == TermKind::App) {
    collect_vars(t->head, out);
    collect_vars(t->arg, out);
  }
}

inline bool occurs_var(const Term& t, std::string_view name) {
  if (!t->has_vars) return false;
  if (t->kind == TermKind::Var) return t->name == name;
  return t->kind == TermKind::App && (occurs_var(t->head, name) || occurs_var(t->arg, name));
}

}  // namespace lpc
