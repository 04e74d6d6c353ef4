#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lpc/errors.hpp"
#include "lpc/formula.hpp"
#include "lpc/subst.hpp"
#include "lpc/term.hpp"

namespace lpc {

namespace detail {

enum class Tok { Ident, Var, LParen, RParen, Dot, Comma, RImp, FImp, Query, Mode, Plus, Minus, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto adv = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') adv(1);
      continue;
    }
    int l = line, k = col;
    auto emit = [&](Tok t, std::size_t n) {
      out.push_back({t, std::string(src.substr(i, n)), l, k});
      adv(n);
    };
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      bool upper = std::isupper(static_cast<unsigned char>(c)) || c == '_';
      emit(upper ? Tok::Var : Tok::Ident, j - i);
      continue;
    }
    std::string_view rest = src.substr(i);
    if (rest.starts_with("<-")) {
      emit(Tok::RImp, 2);
    } else if (rest.starts_with("=>")) {
      emit(Tok::FImp, 2);
    } else if (rest.starts_with("?-")) {
      emit(Tok::Query, 2);
    } else if (rest.starts_with("#mode")) {
      emit(Tok::Mode, 5);
    } else if (c == '(') {
      emit(Tok::LParen, 1);
    } else if (c == ')') {
      emit(Tok::RParen, 1);
    } else if (c == '.') {
      emit(Tok::Dot, 1);
    } else if (c == ',') {
      emit(Tok::Comma, 1);
    } else if (c == '+') {
      emit(Tok::Plus, 1);
    } else if (c == '-') {
      emit(Tok::Minus, 1);
    } else if (std::ispunct(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::ispunct(static_cast<unsigned char>(src[j])) && src[j] != '(' &&
             src[j] != ')' && src[j] != '.' && src[j] != ',')
        ++j;
      throw ParseError(ParseError::Kind::UnboundOperator, l, k,
                       "unknown operator '" + std::string(src.substr(i, j - i)) + "'");
    } else {
      throw ParseError(ParseError::Kind::Syntax, l, k,
                       std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

struct PredUse {
  std::size_t arity;
  int line, col;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::map<std::string, PredUse>& arities)
      : t_(std::move(toks)), arities_(arities) {}

  bool at_end() const { return peek().kind == Tok::End; }
  const Token& peek(std::size_t k = 0) const {
    return t_[std::min(p_ + k, t_.size() - 1)];
  }

  // `<-` is left-associative: `h <- a1 <- a2` is a2 ⊃ (a1 ⊃ h), so body
  // atoms read top to bottom and the last one is the outermost antecedent.
  Formula formula() {
    Formula f = fimp();
    while (peek().kind == Tok::RImp) {
      if (no_rimp_) fail_op(peek(), "'<-' is not allowed in a goal");
      ++p_;
      Formula body = fimp();
      f = imp(body, f);
    }
    return f;
  }

  Formula fimp() {
    Formula l = conjunction();
    if (peek().kind == Tok::FImp) {
      ++p_;
      Formula r = fimp();
      return imp(l, r);
    }
    return l;
  }

  Formula conjunction() {
    Formula f = prim();
    while (peek().kind == Tok::Comma) {
      ++p_;
      f = conj(f, prim());
    }
    return f;
  }

  Formula prim() {
    const Token& tk = peek();
    if (tk.kind == Tok::Ident && tk.text == "true") {
      ++p_;
      return truth();
    }
    if (tk.kind == Tok::Ident && tk.text == "all") {
      ++p_;
      const Token& v = peek();
      if (v.kind != Tok::Var && v.kind != Tok::Ident) fail(v, "expected a variable after 'all'");
      std::string name = v.text;
      ++p_;
      expect(Tok::Dot, "'.' after quantified variable");
      bound_.push_back(name);
      Formula body = formula();
      bound_.pop_back();
      return all(name, body);
    }
    if (tk.kind == Tok::LParen) {
      ++p_;
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (tk.kind == Tok::Ident) return atom_f(atom());
    if (tk.kind == Tok::Var) fail(tk, "a formula cannot start with variable '" + tk.text + "'");
    fail(tk, "expected a formula");
  }

  Atom atom() {
    const Token& h = peek();
    Atom a;
    a.pred = h.text;
    ++p_;
    while (starts_term(peek())) a.args.push_back({term(), Mode::Unmoded});
    auto it = arities_.find(a.pred);
    if (it == arities_.end()) {
      arities_[a.pred] = {a.args.size(), h.line, h.col};
    } else if (it->second.arity != a.args.size()) {
      throw ParseError(ParseError::Kind::ArityMismatch, h.line, h.col,
                       "predicate '" + a.pred + "' used with " + std::to_string(a.args.size()) +
                           " argument(s), earlier with " + std::to_string(it->second.arity));
    }
    return a;
  }

  Term term() {
    const Token& tk = peek();
    if (tk.kind == Tok::Var || tk.kind == Tok::Ident) {
      if (tk.kind == Tok::Ident && (tk.text == "all" || tk.text == "true"))
        fail(tk, "'" + tk.text + "' cannot be used as a term");
      ++p_;
      if (tk.kind == Tok::Var || is_bound(tk.text)) {
        if (tk.kind == Tok::Var) note_var(tk.text);
        return var(tk.text);
      }
      return cnst(tk.text);
    }
    if (tk.kind == Tok::LParen) {
      ++p_;
      Term h = term();
      while (starts_term(peek())) h = app(h, term());
      expect(Tok::RParen, "')'");
      return h;
    }
    fail(tk, "expected a term");
  }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(peek(), std::string("expected ") + what);
    ++p_;
  }

  [[noreturn]] void fail(const Token& tk, const std::string& m) const {
    throw ParseError(ParseError::Kind::Syntax, tk.line, tk.col, m);
  }
  [[noreturn]] void fail_op(const Token& tk, const std::string& m) const {
    throw ParseError(ParseError::Kind::UnboundOperator, tk.line, tk.col, m);
  }

  std::size_t pos() const { return p_; }
  void advance() { ++p_; }

  // Uppercase variables seen since the last reset, first occurrence first.
  std::vector<std::string> free_order;
  bool no_rimp_ = false;

  void reset_vars() { free_order.clear(); }

 private:
  static bool starts_term(const Token& tk) {
    if (tk.kind == Tok::Var || tk.kind == Tok::LParen) return true;
    return tk.kind == Tok::Ident && tk.text != "all" && tk.text != "true";
  }

  bool is_bound(const std::string& n) const {
    for (const auto& b : bound_)
      if (b == n) return true;
    return false;
  }

  void note_var(const std::string& n) {
    if (is_bound(n)) return;
    for (const auto& v : free_order)
      if (v == n) return;
    free_order.push_back(n);
  }

  std::vector<Token> t_;
  std::size_t p_ = 0;
  std::vector<std::string> bound_;
  std::map<std::string, PredUse>& arities_;
};

inline Formula apply_modes(const Formula& f, const ModeTable& modes) {
  switch (f->kind) {
    case Kind::Atom:
    case Kind::EqAtom: {
      auto it = modes.find(f->atom.pred);
      if (it == modes.end()) return f;
      auto n = std::make_shared<FormulaNode>(*f);
      for (std::size_t i = 0; i < n->atom.args.size(); ++i) n->atom.args[i].mode = it->second.marks[i];
      return finish(std::move(n));
    }
    case Kind::Imp:
    case Kind::And:
      return with_children(f, apply_modes(f->left, modes), apply_modes(f->right, modes));
    case Kind::All:
    case Kind::Exists:
    case Kind::Lam:
      return with_children(f, apply_modes(f->left, modes));
    default:
      return f;
  }
}

inline void check_mode_arities(const ModeTable& modes, const std::map<std::string, PredUse>& ar,
                               const std::map<std::string, std::pair<int, int>>& where) {
  for (const auto& [pred, decl] : modes) {
    auto it = ar.find(pred);
    if (it != ar.end() && it->second.arity != decl.arity) {
      auto w = where.at(pred);
      throw ParseError(ParseError::Kind::ModeMismatch, w.first, w.second,
                       "mode for '" + pred + "' has " + std::to_string(decl.arity) +
                           " mark(s) but the predicate is used with " +
                           std::to_string(it->second.arity) + " argument(s)");
    }
  }
}

}  // namespace detail

// Parses a program. Free uppercase variables of each clause are bound by
// ∀ at the clause top, in order of first occurrence.
inline SourceProgram parse_program(std::string_view text) {
  std::map<std::string, detail::PredUse> arities;
  std::map<std::string, std::pair<int, int>> mode_pos;
  detail::Parser ps(detail::lex(text), arities);
  SourceProgram prog;
  using detail::Tok;
  while (!ps.at_end()) {
    const detail::Token& tk = ps.peek();
    if (tk.kind == Tok::Mode) {
      int line = tk.line, col = tk.col;
      ps.advance();
      const detail::Token& name = ps.peek();
      if (name.kind != Tok::Ident) ps.fail(name, "expected a predicate name after #mode");
      std::string pred = name.text;
      ps.advance();
      ps.expect(Tok::LParen, "'('");
      ModeDecl d;
      for (;;) {
        const detail::Token& m = ps.peek();
        if (m.kind == Tok::Plus)
          d.marks.push_back(Mode::In);
        else if (m.kind == Tok::Minus)
          d.marks.push_back(Mode::Out);
        else
          ps.fail(m, "expected '+' or '-'");
        ps.advance();
        if (ps.peek().kind == Tok::Comma) {
          ps.advance();
          continue;
        }
        break;
      }
      ps.expect(Tok::RParen, "')'");
      ps.expect(Tok::Dot, "'.'");
      d.arity = d.marks.size();
      auto prev = prog.modes.find(pred);
      if (prev != prog.modes.end() && prev->second.marks != d.marks)
        throw ParseError(ParseError::Kind::ModeMismatch, line, col,
                         "conflicting mode declarations for '" + pred + "'");
      prog.modes[pred] = d;
      mode_pos.emplace(pred, std::make_pair(line, col));
      continue;
    }
    ps.reset_vars();
    Formula f = ps.formula();
    ps.expect(Tok::Dot, "'.' at end of clause");
    for (auto it = ps.free_order.rbegin(); it != ps.free_order.rend(); ++it) f = all(*it, f);
    prog.clauses.push_back(f);
  }
  detail::check_mode_arities(prog.modes, arities, mode_pos);
  for (auto& c : prog.clauses) c = detail::apply_modes(c, prog.modes);
  return prog;
}

// Parses a query against `prog` (for arity and mode consistency). The
// leading `?-` and the final `.` are optional.
inline Query parse_query(std::string_view text, const SourceProgram& prog = {}) {
  std::map<std::string, detail::PredUse> arities;
  for (const auto& c : prog.clauses) {
    // Seed arities from the program so a mismatching query is rejected.
    std::vector<const FormulaNode*> stack{c.get()};
    while (!stack.empty()) {
      const FormulaNode* n = stack.back();
      stack.pop_back();
      if (n->kind == Kind::Atom) arities.emplace(n->atom.pred, detail::PredUse{n->atom.arity(), 0, 0});
      if (n->left) stack.push_back(n->left.get());
      if (n->right) stack.push_back(n->right.get());
    }
  }
  for (const auto& [p, d] : prog.modes) arities.emplace(p, detail::PredUse{d.arity, 0, 0});
  detail::Parser ps(detail::lex(text), arities);
  ps.no_rimp_ = true;
  using detail::Tok;
  if (ps.peek().kind == Tok::Query) ps.advance();
  if (ps.at_end()) ps.fail(ps.peek(), "empty query");
  Query q;
  q.goal = ps.formula();
  if (ps.peek().kind == Tok::Dot) ps.advance();
  if (!ps.at_end()) ps.fail(ps.peek(), "unexpected input after query");
  q.vars = ps.free_order;
  q.goal = detail::apply_modes(q.goal, prog.modes);
  return q;
}

}  // namespace lpc
