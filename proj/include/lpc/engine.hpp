#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "lpc/errors.hpp"
#include "lpc/sexpr.hpp"
#include "lpc/term.hpp"

namespace lpc {

enum class Outcome : std::uint8_t { Ok, Clash, Occurs, Scope };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Ok: return "ok";
    case Outcome::Clash: return "clash";
    case Outcome::Occurs: return "occurs";
    case Outcome::Scope: return "scope";
  }
  return "?";
}

// Every inference rule of every pipeline, for the per-rule counters.
enum class Rule : std::uint8_t {
  u_atm, u_imp, u_all, i_atm, i_imp, i_all, i_and, g_and, g_true,
  g0_atm, g0_imp, g0_all, r0_eq, r0_and, r0_exists,
  g1_atm, g1_imp, g1_all, c1_imp, c1_all, r1_eq, r1_true, r1_and, r1_exists, g1_atm_fused,
  g2_f, g2_imp, g2_all, a2_atm, a2_exists, m2_true, m2_mtch,
  c2_imp, c2_all, r2_mtch, r2_assg, r2_true, r2_and, r2_exists, a2_atm_fused, g2_atm_fused,
  count_
};

inline constexpr std::array<const char*, static_cast<std::size_t>(Rule::count_)> kRuleNames = {
    "u_atm", "u_imp", "u_all", "i_atm", "i_imp", "i_all", "i_and", "g_and", "g_true",
    "g0_atm", "g0_imp", "g0_all", "r0_eq", "r0_and", "r0_exists",
    "g1_atm", "g1_imp", "g1_all", "c1_imp", "c1_all", "r1_eq", "r1_true", "r1_and", "r1_exists",
    "g1_atm'",
    "g2_f", "g2_imp", "g2_all", "a2_atm", "a2_exists", "m2_true", "m2_mtch",
    "c2_imp", "c2_all", "r2_mtch", "r2_assg", "r2_true", "r2_and", "r2_exists", "a2_atm'",
    "g2_atm'"};

struct Counters {
  std::uint64_t unify_events = 0;
  std::uint64_t match_events = 0;
  std::uint64_t assign_events = 0;
  std::uint64_t nonground_match_lhs_events = 0;
  std::uint64_t bound_assign_events = 0;  // assign whose left side was already bound
  std::array<std::uint64_t, static_cast<std::size_t>(Rule::count_)> rules{};

  void hit(Rule r) { ++rules[static_cast<std::size_t>(r)]; }
  std::uint64_t rule(Rule r) const { return rules[static_cast<std::size_t>(r)]; }

  std::map<std::string, std::uint64_t> rule_map() const {
    std::map<std::string, std::uint64_t> m;
    for (std::size_t i = 0; i < rules.size(); ++i)
      if (rules[i]) m[kRuleNames[i]] = rules[i];
    return m;
  }
};

// Logical variables with a backtrackable trail. Each variable and each
// eigen-constant carries the clock value of its creation; a variable may
// never be bound to a term mentioning a younger eigen-constant.
class BindingStore {
 public:
  struct Checkpoint {
    std::size_t trail_len = 0;
    std::uint64_t serial = 0;
  };

  BindingStore() { eigen_ts_.push_back(0); }

  Term fresh_var() {
    auto id = static_cast<std::uint32_t>(vars_.size());
    vars_.push_back({nullptr, clock_++});
    return logic_var(id);
  }

  Term fresh_eigen() {
    auto id = static_cast<std::uint32_t>(eigen_ts_.size());
    eigen_ts_.push_back(clock_++);
    return eigen_const(id);
  }

  std::uint32_t var_level(std::uint32_t id) const { return vars_.at(id).level; }
  std::uint32_t eigen_level(std::uint32_t id) const { return eigen_ts_.at(id); }
  std::size_t var_count() const { return vars_.size(); }
  bool is_bound(std::uint32_t id) const { return vars_.at(id).value != nullptr; }

  Term deref(Term t) const {
    while (t->kind == TermKind::Logic) {
      const Term& v = vars_[t->id].value;
      if (!v) break;
      t = v;
    }
    return t;
  }

  // Applies all current bindings.
  Term resolve(const Term& t) const {
    if (!t->has_logic) return t;
    Term d = deref(t);
    if (d->kind != TermKind::App) return d;
    Term h = resolve(d->head);
    Term a = resolve(d->arg);
    if (h == d->head && a == d->arg) return d;
    return app(std::move(h), std::move(a));
  }

  bool ground(const Term& t) const {
    if (!t->has_logic && !t->has_vars) return true;
    Term d = deref(t);
    switch (d->kind) {
      case TermKind::Logic:
      case TermKind::Var: return false;
      case TermKind::Const: return true;
      case TermKind::App: return ground(d->head) && ground(d->arg);
    }
    return true;
  }

  // Most general unifier with occurs check and scope check. On failure the
  // store is left as it was.
  Outcome unify(const Term& a, const Term& b) {
    ++counters.unify_events;
    return traced("unify", a, b);
  }

  // Unification that is not reported: binding fresh clause-head variables.
  Outcome unify_silent(const Term& a, const Term& b) { return unify_raw(a, b); }

  // `ground ≐ pattern`. Behaves as unify; counts the call and whether the
  // left side was non-ground.
  Outcome match_lhs(const Term& g, const Term& pattern) {
    ++counters.match_events;
    if (!ground(g)) {
      ++counters.nonground_match_lhs_events;
      if (strict_match)
        throw StrictMatchViolation("non-ground left side in match: " + dump_sexpr(resolve(g)));
    }
    return traced("match", g, pattern);
  }

  // `x := t`. Equality as well; an already-bound left side is counted.
  Outcome assign(const Term& x, const Term& t) {
    ++counters.assign_events;
    if (deref(x)->kind != TermKind::Logic) ++counters.bound_assign_events;
    return traced("assign", x, t);
  }

  Checkpoint mark() {
    live_.push_back(++serial_);
    return {trail_.size(), serial_};
  }

  // Restores the bindings of `cp`. Marks taken after `cp` become stale;
  // `cp` itself stays usable until dropped.
  void undo(const Checkpoint& cp) {
    std::size_t i = live_.size();
    while (i > 0 && live_[i - 1] != cp.serial) --i;
    if (i == 0 || cp.trail_len > trail_.size())
      throw StaleCheckpoint("checkpoint " + std::to_string(cp.serial) + " is stale");
    live_.resize(i);
    unwind(cp.trail_len);
  }

  // Forgets `cp` and every later mark without touching bindings.
  void drop(const Checkpoint& cp) {
    std::size_t i = live_.size();
    while (i > 0 && live_[i - 1] != cp.serial) --i;
    if (i > 0) live_.resize(i - 1);
  }

  // Current value (resolved) of every variable; nullptr when unbound.
  std::vector<Term> snapshot() const {
    std::vector<Term> out;
    out.reserve(vars_.size());
    for (std::uint32_t i = 0; i < vars_.size(); ++i)
      out.push_back(vars_[i].value ? resolve(logic_var(i)) : nullptr);
    return out;
  }

  Counters counters;
  bool strict_match = false;
  std::ostream* trace = nullptr;

 private:
  struct Slot {
    Term value;
    std::uint32_t level;
  };
  struct TrailEntry {
    std::uint32_t var;
    std::uint32_t old_level;
    bool level_only;
  };

  Outcome traced(const char* kind, const Term& a, const Term& b) {
    if (!trace) return unify_raw(a, b);
    std::string la = dump_sexpr(resolve(a)), rb = dump_sexpr(resolve(b));
    Outcome o = unify_raw(a, b);
    *trace << "EVENT " << kind << ' ' << la << ' ' << rb << ' ' << outcome_name(o) << '\n';
    return o;
  }

  void unwind(std::size_t len) {
    while (trail_.size() > len) {
      const TrailEntry& e = trail_.back();
      if (e.level_only)
        vars_[e.var].level = e.old_level;
      else
        vars_[e.var].value = nullptr;
      trail_.pop_back();
    }
  }

  // Occurs check, scope check and level lowering for binding var `id`.
  Outcome check_and_lower(std::uint32_t id, const Term& t) {
    const std::uint32_t lvl = vars_[id].level;
    std::vector<Term> todo{t};
    while (!todo.empty()) {
      Term d = deref(todo.back());
      todo.pop_back();
      switch (d->kind) {
        case TermKind::Logic:
          if (d->id == id) return Outcome::Occurs;
          if (vars_[d->id].level > lvl) {
            trail_.push_back({d->id, vars_[d->id].level, true});
            vars_[d->id].level = lvl;
          }
          break;
        case TermKind::Const:
          if (d->id != 0 && eigen_ts_[d->id] > lvl) return Outcome::Scope;
          break;
        case TermKind::App:
          todo.push_back(d->arg);
          todo.push_back(d->head);
          break;
        case TermKind::Var:
          break;
      }
    }
    return Outcome::Ok;
  }

  Outcome bind(std::uint32_t id, const Term& t) {
    Outcome o = check_and_lower(id, t);
    if (o != Outcome::Ok) return o;
    vars_[id].value = t;
    trail_.push_back({id, 0, false});
    return Outcome::Ok;
  }

  Outcome unify_raw(const Term& a0, const Term& b0) {
    const std::size_t start = trail_.size();
    std::vector<std::pair<Term, Term>> todo{{a0, b0}};
    Outcome result = Outcome::Ok;
    while (!todo.empty() && result == Outcome::Ok) {
      Term a = deref(todo.back().first);
      Term b = deref(todo.back().second);
      todo.pop_back();
      if (a == b) continue;
      if (a->kind == TermKind::Logic && b->kind == TermKind::Logic) {
        if (a->id == b->id) continue;
        // Bind the younger variable to the older one.
        if (vars_[a->id].level >= vars_[b->id].level)
          result = bind(a->id, b);
        else
          result = bind(b->id, a);
        continue;
      }
      if (a->kind == TermKind::Logic) {
        result = bind(a->id, b);
        continue;
      }
      if (b->kind == TermKind::Logic) {
        result = bind(b->id, a);
        continue;
      }
      if (a->kind != b->kind) {
        result = Outcome::Clash;
        continue;
      }
      switch (a->kind) {
        case TermKind::Const:
        case TermKind::Var:
          if (a->name != b->name) result = Outcome::Clash;
          break;
        case TermKind::App:
          todo.emplace_back(a->arg, b->arg);
          todo.emplace_back(a->head, b->head);
          break;
        case TermKind::Logic:
          break;
      }
    }
    if (result != Outcome::Ok) unwind(start);
    return result;
  }

  std::vector<Slot> vars_;
  std::vector<std::uint32_t> eigen_ts_;
  std::vector<TrailEntry> trail_;
  std::vector<std::uint64_t> live_;
  std::uint64_t serial_ = 0;
  std::uint32_t clock_ = 1;
};

// RAII choice point: marks on construction, forgets the mark on exit.
class ChoicePoint {
 public:
  explicit ChoicePoint(BindingStore& s) : s_(s), cp_(s.mark()) {}
  ~ChoicePoint() { s_.drop(cp_); }
  ChoicePoint(const ChoicePoint&) = delete;
  ChoicePoint& operator=(const ChoicePoint&) = delete;
  void undo() { s_.undo(cp_); }

 private:
  BindingStore& s_;
  BindingStore::Checkpoint cp_;
};

}  // namespace lpc
