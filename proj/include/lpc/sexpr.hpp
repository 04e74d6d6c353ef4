#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lpc/formula.hpp"
#include "lpc/term.hpp"

namespace lpc {

inline void dump_sexpr(const Term& t, std::string& out) {
  switch (t->kind) {
    case TermKind::Var:
      out += "(var ";
      out += t->name;
      out += ')';
      return;
    case TermKind::Const:
      out += "(const ";
      out += t->name;
      out += ')';
      return;
    case TermKind::Logic:
      out += "(lvar ";
      out += std::to_string(t->id);
      out += ')';
      return;
    case TermKind::App:
      out += "(app ";
      dump_sexpr(t->head, out);
      out += ' ';
      dump_sexpr(t->arg, out);
      out += ')';
      return;
  }
}

inline std::string dump_sexpr(const Term& t) {
  std::string s;
  dump_sexpr(t, s);
  return s;
}

namespace detail {

inline void dump_atom(const Atom& a, std::string& out) {
  out += "(atom ";
  out += a.pred;
  for (const auto& x : a.args) {
    out += ' ';
    dump_sexpr(x.term, out);
  }
  out += ')';
}

}  // namespace detail

inline void dump_sexpr(const Formula& f, std::string& out) {
  auto binary = [&](const char* tag, const Formula& l, const Formula& r) {
    out += '(';
    out += tag;
    out += ' ';
    dump_sexpr(l, out);
    out += ' ';
    dump_sexpr(r, out);
    out += ')';
  };
  auto terms = [&](const char* tag) {
    out += '(';
    out += tag;
    out += ' ';
    dump_sexpr(f->lhs, out);
    out += ' ';
    dump_sexpr(f->rhs, out);
    out += ')';
  };
  auto binder = [&](const char* tag) {
    out += '(';
    out += tag;
    out += ' ';
    out += f->name;
    out += ' ';
    dump_sexpr(f->left, out);
    out += ')';
  };
  switch (f->kind) {
    case Kind::Atom: detail::dump_atom(f->atom, out); return;
    case Kind::Imp: binary("imp", f->left, f->right); return;
    case Kind::And: binary("and", f->left, f->right); return;
    case Kind::All: binder("all"); return;
    case Kind::Exists: binder("exists"); return;
    case Kind::Lam: binder("lam"); return;
    case Kind::True: out += "true"; return;
    case Kind::Eq: terms("eq"); return;
    case Kind::Mtch: terms("mtch"); return;
    case Kind::Assg: terms("assg"); return;
    case Kind::EqAtom:
      out += "(eqatom ";
      detail::dump_atom(f->atom, out);
      out += ' ';
      out += f->name;
      out += ')';
      return;
  }
}

inline std::string dump_sexpr(const Formula& f) {
  std::string s;
  dump_sexpr(f, s);
  return s;
}

// ---------------------------------------------------------------------------
// Reader. Accepts exactly what dump_sexpr writes (whitespace is lenient).

struct SexprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

class SexprReader {
 public:
  explicit SexprReader(std::string_view s) : s_(s) {}

  Formula formula() {
    skip();
    if (peek_word("true")) {
      pos_ += 4;
      return truth();
    }
    expect('(');
    std::string tag = word();
    Formula f;
    if (tag == "atom") return atom_f(atom_body());  // atom_body reads the ')'
    if (tag == "imp" || tag == "and") {
      Formula l = formula();
      Formula r = formula();
      f = tag == "imp" ? imp(l, r) : conj(l, r);
    } else if (tag == "all" || tag == "exists" || tag == "lam") {
      std::string x = word();
      Formula b = formula();
      f = tag == "all" ? all(x, b) : tag == "exists" ? exists(x, b) : lam(x, b);
    } else if (tag == "eq" || tag == "mtch" || tag == "assg") {
      Term l = term();
      Term r = term();
      f = constraint(tag == "eq" ? Kind::Eq : tag == "mtch" ? Kind::Mtch : Kind::Assg, l, r);
    } else if (tag == "eqatom") {
      skip();
      expect('(');
      if (word() != "atom") fail("expected atom");
      Atom a = atom_body();
      std::string alpha = word();
      f = eq_atom(std::move(a), alpha);
    } else {
      fail("unknown tag '" + tag + "'");
    }
    expect(')');
    return f;
  }

  Term term() {
    expect('(');
    std::string tag = word();
    Term t;
    if (tag == "var") {
      t = var(word());
    } else if (tag == "const") {
      std::string n = word();
      if (n.size() > 2 && n[0] == 'c' && n[1] == '#')
        t = eigen_const(static_cast<std::uint32_t>(std::stoul(n.substr(2))));
      else
        t = cnst(n);
    } else if (tag == "lvar") {
      t = logic_var(static_cast<std::uint32_t>(std::stoul(word())));
    } else if (tag == "app") {
      Term h = term();
      Term a = term();
      t = app(h, a);
    } else {
      fail("unknown term tag '" + tag + "'");
    }
    expect(')');
    return t;
  }

  void finish() {
    skip();
    if (pos_ != s_.size()) fail("trailing input");
  }

 private:
  Atom atom_body() {
    Atom a;
    a.pred = word();
    for (;;) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == ')') break;
      a.args.push_back({term(), Mode::Unmoded});
    }
    expect(')');
    return a;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek_word(std::string_view w) const {
    if (s_.substr(pos_, w.size()) != w) return false;
    std::size_t e = pos_ + w.size();
    return e == s_.size() || s_[e] == ' ' || s_[e] == ')' || s_[e] == '\n';
  }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string word() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && s_[pos_] != '(' && s_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (b == pos_) fail("expected a name");
    return std::string(s_.substr(b, pos_ - b));
  }

  [[noreturn]] void fail(const std::string& m) const {
    throw SexprError("sexpr at offset " + std::to_string(pos_) + ": " + m);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_sexpr(std::string_view s) {
  detail::SexprReader r(s);
  Formula f = r.formula();
  r.finish();
  return f;
}

inline Term parse_sexpr_term(std::string_view s) {
  detail::SexprReader r(s);
  Term t = r.term();
  r.finish();
  return t;
}

}  // namespace lpc
