#pragma once

#include <set>
#include <string>
#include <vector>

#include "lpc/formula.hpp"

namespace lpc {

struct ModeViolation {
  std::size_t clause = 0;  // 1-based
  std::string message;
};

struct ModeReport {
  bool well_moded = true;
  std::vector<ModeViolation> violations;
  std::vector<std::string> notes;
};

namespace detail {

class ModeChecker {
 public:
  ModeChecker(const SourceProgram& p, bool strict, ModeReport& r) : prog_(p), strict_(strict), rep_(r) {}

  void program() {
    if (prog_.modes.empty()) rep_.notes.push_back("no modes declared");
    for (std::size_t i = 0; i < prog_.clauses.size(); ++i) {
      clause_ = i + 1;
      std::set<std::string> ground;
      clause(prog_.clauses[i], ground, "");
    }
    rep_.well_moded = rep_.violations.empty();
  }

 private:
  // Checks a clause given the variables already known ground around it.
  void clause(const Formula& c, const std::set<std::string>& outer, const std::string& where) {
    std::vector<Formula> body;  // outermost antecedent first
    std::set<std::string> ground = outer;
    Formula f = c;
    for (;;) {
      if (f->kind == Kind::All) {
        ground.erase(f->name);
        f = f->left;
      } else if (f->kind == Kind::Imp) {
        body.push_back(f->left);
        f = f->right;
      } else {
        break;
      }
    }
    if (f->kind != Kind::Atom) return;  // And/True: preprocessing reports these
    const Atom& h = f->atom;
    std::string ctx = where + "head " + h.pred;
    declared(h.pred, h.arity(), ctx);  // unmoded heads: every argument is an input
    for (const auto& a : h.args)
      if (a.mode != Mode::Out) add_vars(a.term, ground);
    int n = 0;
    for (auto it = body.rbegin(); it != body.rend(); ++it) goal(*it, ground, where, ++n);
    for (std::size_t j = 0; j < h.args.size(); ++j)
      if (h.args[j].mode == Mode::Out) require(h.args[j].term, ground, ctx + ", output argument " + std::to_string(j + 1));
  }

  void goal(const Formula& g, std::set<std::string>& ground, const std::string& where, int n) {
    switch (g->kind) {
      case Kind::Atom: {
        const Atom& a = g->atom;
        std::string ctx = where + "goal " + std::to_string(n) + " (" + a.pred + ")";
        if (!declared(a.pred, a.arity(), ctx)) return;
        for (std::size_t j = 0; j < a.args.size(); ++j)
          if (a.args[j].mode != Mode::Out)
            require(a.args[j].term, ground, ctx + ", input argument " + std::to_string(j + 1));
        for (const auto& arg : a.args)
          if (arg.mode == Mode::Out) add_vars(arg.term, ground);
        return;
      }
      case Kind::And:
        goal(g->left, ground, where, n);
        goal(g->right, ground, where, n);
        return;
      case Kind::All:
        // Eigenvariables are constants.
        ground.insert(g->name);
        goal(g->left, ground, where, n);
        return;
      case Kind::Imp:
        clause(g->left, ground, where + "goal " + std::to_string(n) + ", assumption: ");
        goal(g->right, ground, where, n);
        return;
      default:
        return;
    }
  }

  bool declared(const std::string& pred, std::size_t arity, const std::string& ctx) {
    if (arity == 0 || prog_.modes.count(pred)) return true;
    if (strict_) violation(ctx + ": predicate " + pred + " has no mode declaration");
    return false;
  }

  void require(const Term& t, const std::set<std::string>& ground, const std::string& ctx) {
    std::vector<std::string> vs;
    collect_vars(t, vs);
    std::set<std::string> seen;
    std::string missing;
    for (const auto& v : vs) {
      if (ground.count(v) || !seen.insert(v).second) continue;
      missing += (missing.empty() ? "" : " ") + v;
    }
    if (!missing.empty()) violation(ctx + ": " + missing + " not ground");
  }

  static void add_vars(const Term& t, std::set<std::string>& ground) {
    std::vector<std::string> vs;
    collect_vars(t, vs);
    ground.insert(vs.begin(), vs.end());
  }

  void violation(std::string msg) { rep_.violations.push_back({clause_, std::move(msg)}); }

  const SourceProgram& prog_;
  bool strict_;
  ModeReport& rep_;
  std::size_t clause_ = 0;
};

}  // namespace detail

// Left-to-right groundness dataflow over each clause. Unmoded predicates are
// violations when strict and unchecked otherwise.
inline ModeReport check_well_moded(const SourceProgram& p, bool strict = false) {
  ModeReport r;
  detail::ModeChecker(p, strict, r).program();
  return r;
}

}  // namespace lpc
