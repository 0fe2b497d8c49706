// Copyright 2026 The kbeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Belief, counterfactual and expected-utility formulas over complete
// systems, the equilibrium knowledge-based programs, derived protocols and
// the de facto implementation check.

#ifndef KBEQ_EPISTEMIC_HPP
#define KBEQ_EPISTEMIC_HPP

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kbeq/literal.hpp"
#include "kbeq/systems.hpp"

namespace kbeq {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind {
    kBel,       // B_i(args[0])
    kDoStrat,   // i plays pure strategy `name` in this run
    kDoMove,    // i performs action `name` (or Skip) at this point
    kCanMove,   // `name` is among i's possible moves here
    kEuEq,      // EU_i = value / variable
    kEuLe,      // EU_i <= value / variable
    kCf,        // args[0] (a do form) counterfactually implies args[1]
    kNot,
    kAnd,
    kForallEu,  // args[0] with `name` bound to EU_i at the point
  };
  Kind kind = Kind::kAnd;
  std::size_t player = 0;
  /// Strategy or action name, or the utility variable.
  std::string name;
  /// Right-hand side of an EU comparison when it is a constant.
  std::optional<EpsNum> value;
  std::vector<FormulaPtr> args;

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.kind != b.kind || a.player != b.player || a.name != b.name || a.value != b.value ||
        a.args.size() != b.args.size())
      return false;
    for (std::size_t k = 0; k < a.args.size(); ++k)
      if (!(*a.args[k] == *b.args[k])) return false;
    return true;
  }
};

inline FormulaPtr make_formula(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

inline FormulaPtr bel(std::size_t i, FormulaPtr f) {
  return make_formula({Formula::Kind::kBel, i, {}, {}, {std::move(f)}});
}
inline FormulaPtr do_strat(std::size_t i, std::string s) {
  return make_formula({Formula::Kind::kDoStrat, i, std::move(s), {}, {}});
}
inline FormulaPtr do_move(std::size_t i, std::string a) {
  return make_formula({Formula::Kind::kDoMove, i, std::move(a), {}, {}});
}
inline FormulaPtr can_move(std::size_t i, std::string a) {
  return make_formula({Formula::Kind::kCanMove, i, std::move(a), {}, {}});
}
inline FormulaPtr eu_eq(std::size_t i, std::string var) {
  return make_formula({Formula::Kind::kEuEq, i, std::move(var), {}, {}});
}
inline FormulaPtr eu_eq(std::size_t i, EpsNum v) {
  return make_formula({Formula::Kind::kEuEq, i, {}, std::move(v), {}});
}
inline FormulaPtr eu_le(std::size_t i, std::string var) {
  return make_formula({Formula::Kind::kEuLe, i, std::move(var), {}, {}});
}
inline FormulaPtr eu_le(std::size_t i, EpsNum v) {
  return make_formula({Formula::Kind::kEuLe, i, {}, std::move(v), {}});
}
inline FormulaPtr cf(FormulaPtr antecedent, FormulaPtr body) {
  if (antecedent->kind != Formula::Kind::kDoStrat && antecedent->kind != Formula::Kind::kDoMove)
    throw Error("counterfactual antecedent must be do[i](...)");
  return make_formula({Formula::Kind::kCf, antecedent->player, {}, {},
                       {std::move(antecedent), std::move(body)}});
}
inline FormulaPtr neg(FormulaPtr f) {
  return make_formula({Formula::Kind::kNot, 0, {}, {}, {std::move(f)}});
}
inline FormulaPtr conj(std::vector<FormulaPtr> fs) {
  return make_formula({Formula::Kind::kAnd, 0, {}, {}, std::move(fs)});
}
inline FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return neg(conj({std::move(a), neg(std::move(b))})); }
inline FormulaPtr forall_eu(std::size_t i, std::string var, FormulaPtr body) {
  return make_formula({Formula::Kind::kForallEu, i, std::move(var), {}, {std::move(body)}});
}

// Surface syntax -----------------------------------------------------------

namespace detail {

/// Player of the first EU comparison mentioning `var`, if any.
inline std::optional<std::size_t> var_player(const Formula& f, const std::string& var) {
  if ((f.kind == Formula::Kind::kEuEq || f.kind == Formula::Kind::kEuLe) && !f.value && f.name == var)
    return f.player;
  if (f.kind == Formula::Kind::kForallEu && f.name == var) return std::nullopt;
  for (const auto& a : f.args)
    if (auto p = var_player(*a, var)) return p;
  return std::nullopt;
}

inline void render_formula(const Formula& f, const std::vector<std::string>& players, std::string& out) {
  auto who = [&](std::size_t i) { return "[" + players.at(i) + "]"; };
  switch (f.kind) {
    case Formula::Kind::kBel:
      out += "B" + who(f.player) + "(";
      render_formula(*f.args[0], players, out);
      out += ")";
      return;
    case Formula::Kind::kDoStrat:
    case Formula::Kind::kDoMove:
      // Strategy and move forms share the `do` spelling; the game decides
      // which one a name denotes.
      out += "do" + who(f.player) + "(" + f.name + ")";
      return;
    case Formula::Kind::kCanMove:
      out += "can" + who(f.player) + "(" + f.name + ")";
      return;
    case Formula::Kind::kEuEq:
    case Formula::Kind::kEuLe: {
      out += "EU" + who(f.player) + (f.kind == Formula::Kind::kEuEq ? " = " : " <= ");
      if (!f.value) {
        out += f.name;
      } else {
        std::string v = f.value->to_string();
        out += v.find_first_of(" /*^") == std::string::npos ? v : "(" + v + ")";
      }
      return;
    }
    case Formula::Kind::kCf:
      out += "cf(";
      render_formula(*f.args[0], players, out);
      out += ", ";
      render_formula(*f.args[1], players, out);
      out += ")";
      return;
    case Formula::Kind::kNot:
      out += "!";
      render_formula(*f.args[0], players, out);
      return;
    case Formula::Kind::kAnd:
      out += "(";
      for (std::size_t k = 0; k < f.args.size(); ++k) {
        if (k) out += " & ";
        render_formula(*f.args[k], players, out);
      }
      out += ")";
      return;
    case Formula::Kind::kForallEu: {
      out += "forall";
      if (var_player(*f.args[0], f.name) != f.player) out += who(f.player);
      out += " " + f.name + " (";
      render_formula(*f.args[0], players, out);
      out += ")";
      return;
    }
  }
}

}  // namespace detail

inline std::string to_string(const Formula& f, const std::vector<std::string>& players) {
  std::string out;
  detail::render_formula(f, players, out);
  return out;
}

class FormulaSyntaxError : public Error {
 public:
  FormulaSyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

/// Recursive-descent parser for the formula surface syntax.
///
///   formula := conj ('->' formula)?
///   conj    := unary ('&' unary)*
///   unary   := '!' unary | atom
///   atom    := '(' formula ')' | 'B' who '(' formula ')'
///            | 'do' who '(' id ')' | 'can' who '(' id ')'
///            | 'EU' who ('=' | '<=') (id | number)
///            | 'cf' '(' formula ',' formula ')'
///            | 'forall' who? id '(' formula ')'
///   who     := '[' player ']'
///
/// `do` names a pure strategy in normal-form games and an action (or Skip)
/// in extensive games.
class FormulaParser {
 public:
  FormulaParser(std::string_view text, const std::vector<std::string>& players, bool extensive)
      : s_(text), players_(players), extensive_(extensive) {}

  FormulaPtr parse_all() {
    FormulaPtr f = formula();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    check_vars(*f, {});
    return f;
  }

  std::size_t pos() const { return pos_; }
  FormulaPtr parse_prefix(std::size_t& pos) {
    pos_ = pos;
    FormulaPtr f = formula();
    check_vars(*f, {});
    pos = pos_;
    return f;
  }

 private:
  FormulaPtr formula() {
    FormulaPtr lhs = conjunction();
    skip_ws();
    if (s_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return implies(lhs, formula());
    }
    return lhs;
  }

  FormulaPtr conjunction() {
    std::vector<FormulaPtr> parts{unary()};
    for (;;) {
      skip_ws();
      if (peek() != '&') break;
      ++pos_;
      parts.push_back(unary());
    }
    return parts.size() == 1 ? parts.front() : conj(std::move(parts));
  }

  FormulaPtr unary() {
    skip_ws();
    if (peek() == '!') {
      ++pos_;
      return neg(unary());
    }
    return atom();
  }

  FormulaPtr atom() {
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      FormulaPtr f = formula();
      expect(')');
      return f;
    }
    std::size_t at = pos_;
    std::string word = ident();
    if (word.empty()) fail("expected a formula");
    if (word == "B") {
      std::size_t i = who();
      expect('(');
      FormulaPtr body = formula();
      expect(')');
      return bel(i, body);
    }
    if (word == "do" || word == "can") {
      std::size_t i = who();
      expect('(');
      std::string name = ident();
      if (name.empty()) fail("expected a strategy or action name");
      expect(')');
      if (word == "can") return can_move(i, name);
      return extensive_ ? do_move(i, name) : do_strat(i, name);
    }
    if (word == "EU") {
      std::size_t i = who();
      skip_ws();
      bool le = false;
      if (s_.substr(pos_, 2) == "<=") {
        le = true;
        pos_ += 2;
      } else if (peek() == '=') {
        ++pos_;
      } else {
        fail("expected '=' or '<=' after EU[...]");
      }
      skip_ws();
      std::size_t save = pos_;
      std::string var = ident();
      if (!var.empty() && var != "eps") return le ? eu_le(i, var) : eu_eq(i, var);
      pos_ = save;
      try {
        EpsNum v = parse_number_prefix(s_, pos_);
        return le ? eu_le(i, v) : eu_eq(i, v);
      } catch (const LiteralError& e) {
        fail(e.what(), e.offset());
      }
    }
    if (word == "cf") {
      expect('(');
      std::size_t ant_at = pos_;
      FormulaPtr ant = formula();
      if (ant->kind != Formula::Kind::kDoStrat && ant->kind != Formula::Kind::kDoMove)
        fail("counterfactual antecedent must be do[i](...)", ant_at);
      expect(',');
      FormulaPtr body = formula();
      expect(')');
      return cf(ant, body);
    }
    if (word == "forall") {
      skip_ws();
      std::optional<std::size_t> i;
      if (peek() == '[') i = who();
      skip_ws();
      std::size_t var_at = pos_;
      std::string var = ident();
      if (var.empty()) fail("expected a variable after forall");
      expect('(');
      FormulaPtr body = formula();
      expect(')');
      if (!i) i = var_player(*body, var);
      if (!i) fail("cannot tell whose utility " + var + " ranges over; write forall[i]", var_at);
      return forall_eu(*i, var, body);
    }
    fail("unknown formula keyword '" + word + "'", at);
  }

  std::size_t who() {
    expect('[');
    skip_ws();
    std::size_t at = pos_;
    std::string name = ident();
    expect(']');
    for (std::size_t i = 0; i < players_.size(); ++i)
      if (players_[i] == name) return i;
    fail("unknown player '" + name + "'", at);
  }

  /// Free variables must be bound by an enclosing forall.
  void check_vars(const Formula& f, std::set<std::string> bound) {
    if ((f.kind == Formula::Kind::kEuEq || f.kind == Formula::Kind::kEuLe) && !f.value &&
        !bound.count(f.name))
      throw FormulaSyntaxError("unbound utility variable '" + f.name + "'", 0);
    if (f.kind == Formula::Kind::kForallEu) bound.insert(f.name);
    for (const auto& a : f.args) check_vars(*a, bound);
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) return {};
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '.' ||
           peek() == '\'')
      ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) { fail(what, pos_); }
  [[noreturn]] void fail(const std::string& what, std::size_t at) { throw FormulaSyntaxError(what, at); }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string_view s_;
  const std::vector<std::string>& players_;
  bool extensive_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the surface syntax against a game's player names.
inline FormulaPtr parse_formula(std::string_view text, const std::vector<std::string>& players,
                                bool extensive) {
  return detail::FormulaParser(text, players, extensive).parse_all();
}

// Counterfactuals ----------------------------------------------------------

/// A deviation for counterfactual_shift: a whole pure strategy, or one move
/// at the current local state.
struct Deviation {
  enum class Kind { kStrategy, kMove };
  Kind kind = Kind::kStrategy;
  std::size_t strategy = 0;
  Action move;

  static Deviation to_strategy(std::size_t s) { return {Kind::kStrategy, s, {}}; }
  static Deviation to_move(Action a) { return {Kind::kMove, 0, a}; }
};

class IllegalDeviation : public Error {
 public:
  explicit IllegalDeviation(const std::string& what) : Error("illegal deviation: " + what) {}
};

/// The point of the complete system where i deviates as given and the run
/// otherwise agrees with pt's run (same initial state, others' strategies,
/// and chance where it still applies).
template <OrderedField F>
Point counterfactual_shift(const System<F>& sys, const Point& pt, std::size_t i, const Deviation& dev) {
  if (sys.kind() != SystemKind::kComplete) throw Error("counterfactuals need a complete system");
  const Run& r = sys.run(pt.run);
  const Context<F>& ctx = sys.context();
  PureProfile p = sys.played(pt.run);
  if (dev.kind == Deviation::Kind::kStrategy) {
    if (dev.strategy >= ctx.form().num_strategies(i)) throw IllegalDeviation("unknown strategy");
    p[i] = dev.strategy;
  } else {
    LocalState ls = sys.local_state(pt, i);
    if (ls.kind == LocalState::Kind::kAtInfoset) {
      if (dev.move.is_skip() || dev.move.index >= ctx.tree().infoset(ls.infoset).actions.size())
        throw IllegalDeviation("move not available at " + sys.describe_local_state(i, ls));
      p[i] = ctx.tree().with_action(p[i], ls.infoset, dev.move.index);
    } else if (ls.kind == LocalState::Kind::kInitial) {
      if (dev.move.is_skip() || dev.move.index >= ctx.form().num_strategies(i))
        throw IllegalDeviation("move not available at " + sys.describe_local_state(i, ls));
      p[i] = dev.move.index;
    } else if (!dev.move.is_skip()) {
      throw IllegalDeviation("only Skip is possible at " + sys.describe_local_state(i, ls));
    }
  }
  std::size_t k = ctx.form().profile_index(p);
  if (k == r.played) return pt;
  auto target = sys.find_run(r.initial, k, r.chance);
  if (!target) throw Error("complete system lacks a counterfactual run");
  if (pt.time >= sys.num_times(*target))
    throw IllegalDeviation("counterfactual run ends before time " + std::to_string(pt.time));
  return {*target, pt.time};
}

// Evaluation ---------------------------------------------------------------

namespace detail {

template <OrderedField F>
class Evaluator {
 public:
  Evaluator(const System<F>& sys, EuMode mode) : sys_(sys), mode_(mode) {}

  bool holds(const Point& pt, const Formula& f) {
    switch (f.kind) {
      case Formula::Kind::kBel: return belief(pt, f);
      case Formula::Kind::kDoStrat: {
        auto s = sys_.context().form().strategy_index(f.player, f.name);
        if (!s) throw Error("unknown strategy " + f.name);
        return sys_.played(pt.run)[f.player] == *s;
      }
      case Formula::Kind::kDoMove: {
        auto a = resolve(pt, f.player, f.name);
        return a && *a == sys_.action_at(pt, f.player);
      }
      case Formula::Kind::kCanMove: return resolve(pt, f.player, f.name).has_value();
      case Formula::Kind::kEuEq:
      case Formula::Kind::kEuLe: {
        std::optional<EpsNum> rhs = f.value;
        if (!rhs) {
          auto it = env_.find(f.name);
          if (it == env_.end()) throw Error("unbound utility variable " + f.name);
          rhs = it->second;
        }
        auto eu = eu_at(pt, f.player);
        if (!eu || !rhs) return false;
        return f.kind == Formula::Kind::kEuEq ? *eu == *rhs : *eu <= *rhs;
      }
      case Formula::Kind::kCf: {
        const Formula& ant = *f.args[0];
        Deviation dev;
        if (ant.kind == Formula::Kind::kDoStrat) {
          auto s = sys_.context().form().strategy_index(ant.player, ant.name);
          if (!s) throw Error("unknown strategy " + ant.name);
          dev = Deviation::to_strategy(*s);
        } else {
          auto a = resolve(pt, ant.player, ant.name);
          if (!a) throw IllegalDeviation(ant.name + " is not possible here");
          dev = Deviation::to_move(*a);
        }
        return holds(counterfactual_shift(sys_, pt, ant.player, dev), *f.args[1]);
      }
      case Formula::Kind::kNot: return !holds(pt, *f.args[0]);
      case Formula::Kind::kAnd:
        for (const auto& a : f.args)
          if (!holds(pt, *a)) return false;
        return true;
      case Formula::Kind::kForallEu: {
        auto saved = env_.find(f.name) == env_.end() ? std::nullopt
                                                     : std::optional(env_[f.name]);
        env_[f.name] = eu_at(pt, f.player);
        bool v = holds(pt, *f.args[0]);
        if (saved) env_[f.name] = *saved; else env_.erase(f.name);
        return v;
      }
    }
    return false;
  }

  std::optional<EpsNum> eu_at(const Point& pt, std::size_t i) const {
    auto v = try_point_eu(sys_, pt, i, mode_);
    if (!v) return std::nullopt;
    return to_eps(*v);
  }

  /// Action named `name` among i's possible moves at pt.
  std::optional<Action> resolve(const Point& pt, std::size_t i, const std::string& name) const {
    LocalState ls = sys_.local_state(pt, i);
    const Context<F>& ctx = sys_.context();
    switch (ls.kind) {
      case LocalState::Kind::kAtInfoset:
        if (auto a = ctx.tree().action_index(ls.infoset, name)) return Action{*a};
        return std::nullopt;
      case LocalState::Kind::kInitial:
        if (auto s = ctx.form().strategy_index(i, name)) return Action{*s};
        return std::nullopt;
      default:
        if (name == "Skip") return Action::skip();
        return std::nullopt;
    }
  }

 private:
  bool belief(const Point& pt, const Formula& f) {
    std::size_t i = f.player;
    F total(Rational(0));
    F inside(Rational(0));
    for (const Point& q : runs_through(sys_, pt, i)) {
      const F& w = sys_.prior(i, q.run);
      if (w.is_zero()) continue;
      total = total + w;
      if (holds(q, *f.args[0])) inside = inside + w;
    }
    return !total.is_zero() && inside == total;
  }

  const System<F>& sys_;
  EuMode mode_;
  std::map<std::string, std::optional<EpsNum>> env_;
};

}  // namespace detail

template <OrderedField F>
bool holds(const System<F>& sys, const Point& pt, const Formula& f, EuMode mode = EuMode::kExact) {
  if (sys.kind() != SystemKind::kComplete) throw Error("formulas are evaluated on complete systems");
  if (pt.run >= sys.runs().size() || pt.time >= sys.num_times(pt.run)) throw Error("point out of range");
  return detail::Evaluator<F>(sys, mode).holds(pt, f);
}

// Knowledge-based programs -------------------------------------------------

struct Clause {
  FormulaPtr guard;
  std::string action;
};

struct KbProgram {
  std::vector<std::string> players;
  /// Per player, guards in order.
  std::vector<std::vector<Clause>> clauses;

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& c : clauses) n += c.size();
    return n;
  }
};

/// Play S when believing you play S and no strategy would do better.
inline KbProgram eqnf(const NormalFormGame& g) {
  KbProgram prog{g.players(), std::vector<std::vector<Clause>>(g.num_players())};
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    for (const auto& s : g.strategies(i)) {
      std::vector<FormulaPtr> no_better;
      for (const auto& alt : g.strategies(i)) no_better.push_back(cf(do_strat(i, alt), eu_le(i, "x")));
      FormulaPtr guard =
          bel(i, conj({do_strat(i, s), forall_eu(i, "x", implies(eu_eq(i, "x"), conj(no_better)))}));
      prog.clauses[i].push_back({guard, s});
    }
  }
  return prog;
}

/// Move a when a is possible, you believe you move a, and no possible move
/// would do better. Non-movers have only Skip.
inline KbProgram eqef(const GameTree& t) {
  KbProgram prog{t.players(), std::vector<std::vector<Clause>>(t.num_players())};
  for (std::size_t i = 0; i < t.num_players(); ++i) {
    std::vector<std::string> names;
    for (std::size_t k : t.player_infosets(i))
      for (const auto& a : t.infoset(k).actions)
        if (std::find(names.begin(), names.end(), a) == names.end()) names.push_back(a);
    names.push_back("Skip");
    std::vector<FormulaPtr> no_better;
    for (const auto& alt : names)
      no_better.push_back(implies(can_move(i, alt), cf(do_move(i, alt), eu_le(i, "x"))));
    FormulaPtr optimal = forall_eu(i, "x", implies(eu_eq(i, "x"), conj(no_better)));
    for (const auto& a : names) {
      FormulaPtr guard = conj({can_move(i, a), bel(i, conj({do_move(i, a), optimal}))});
      prog.clauses[i].push_back({guard, a});
    }
  }
  return prog;
}

inline KbProgram eqef(const ExtensiveFormGame& g) { return eqef(GameTree(g)); }

/// A player's protocol as determined by a program in a system: the action of
/// the unique true guard at each local state, or nothing.
class DerivedProtocol {
 public:
  std::optional<Action> at(const LocalState& ls) const {
    auto it = table_.find(ls);
    return it == table_.end() ? std::nullopt : it->second;
  }
  const std::map<LocalState, std::optional<Action>>& table() const { return table_; }
  void set(const LocalState& ls, std::optional<Action> a) { table_[ls] = a; }

 private:
  std::map<LocalState, std::optional<Action>> table_;
};

class GuardsNotExclusive : public Error {
 public:
  explicit GuardsNotExclusive(const std::string& where)
      : Error("guards not mutually exclusive at " + where) {}
};

namespace detail {

template <OrderedField F>
std::optional<Action> derive_at(const KbProgram& prog, const System<F>& sys, std::size_t i,
                                const LocalState& ls, EuMode mode) {
  const auto& pts = sys.points_with(i, ls);
  if (pts.empty()) return std::nullopt;
  // Guards depend only on the local state, so any point of the class will do.
  const Point& pt = pts.front();
  Evaluator<F> ev(sys, mode);
  std::optional<Action> out;
  for (const Clause& c : prog.clauses.at(i)) {
    if (!ev.holds(pt, *c.guard)) continue;
    auto a = ev.resolve(pt, i, c.action);
    if (!a) throw Error("action " + c.action + " is not possible at " + sys.describe_local_state(i, ls));
    if (out) throw GuardsNotExclusive(sys.describe_local_state(i, ls));
    out = a;
  }
  return out;
}

}  // namespace detail

/// Derived protocol at every local state of i where i acts (all points
/// except the last of a run).
template <OrderedField F>
DerivedProtocol derived_protocol(const KbProgram& prog, const System<F>& sys, std::size_t i,
                                 EuMode mode = EuMode::kExact) {
  if (sys.kind() != SystemKind::kComplete) throw Error("derived protocols need a complete system");
  DerivedProtocol out;
  for (const auto& [ls, pts] : sys.local_states(i)) {
    bool acts = std::any_of(pts.begin(), pts.end(),
                            [&](const Point& q) { return q.time + 1 < sys.num_times(q.run); });
    if (acts) out.set(ls, detail::derive_at(prog, sys, i, ls, mode));
  }
  return out;
}

/// Which local states implements() compares.
enum class Scope {
  kPositiveMass,          // mu_i(r) != 0
  kPositiveStandardMass,  // st(mu_i(r)) > 0
  kOwnTypeStandard,       // mu_i(r) != 0 and i's own type has standard mass > 0
};

struct Witness {
  std::size_t player = 0;
  std::string player_name;
  Point point;  // in the generated system
  std::string local_state;
  std::string prescribed;  // derived action, or "undefined"
  std::string actual;
  std::optional<EpsNum> factual_eu;
  std::string deviation;
  std::optional<EpsNum> deviation_eu;
  std::optional<EpsNum> gap;
};

struct Verdict {
  bool implements = false;
  std::optional<Witness> witness;
};

namespace detail {

template <OrderedField F>
bool in_scope(const System<F>& gen, std::size_t r, std::size_t i, Scope scope) {
  const F& w = gen.prior(i, r);
  switch (scope) {
    case Scope::kPositiveMass: return !w.is_zero();
    case Scope::kPositiveStandardMass: return standard_part(w).sign() > 0;
    case Scope::kOwnTypeStandard: {
      if (w.is_zero()) return false;
      const Context<F>& ctx = gen.context();
      std::size_t type = gen.types(r)[i];
      F marginal(Rational(0));
      for (std::size_t g = 0; g < ctx.initial_states().size(); ++g)
        if (ctx.initial_states()[g][i] == type) marginal = marginal + ctx.prior(i, g);
      return standard_part(marginal).sign() > 0;
    }
  }
  return false;
}

}  // namespace detail

/// Best alternative action for i at a point of a complete system, by
/// counterfactual expected utility.
template <OrderedField F>
std::pair<std::string, std::optional<EpsNum>> best_deviation(const System<F>& sys, const Point& pt,
                                                             std::size_t i, EuMode mode) {
  LocalState ls = sys.local_state(pt, i);
  const Context<F>& ctx = sys.context();
  std::size_t n = 0;
  if (ls.kind == LocalState::Kind::kAtInfoset) n = ctx.tree().infoset(ls.infoset).actions.size();
  else if (ls.kind == LocalState::Kind::kInitial) n = ctx.form().num_strategies(i);
  Action actual = sys.action_at(pt, i);
  std::string name;
  std::optional<EpsNum> best;
  for (std::size_t a = 0; a < n; ++a) {
    if (Action{a} == actual) continue;
    Point q = counterfactual_shift(sys, pt, i, Deviation::to_move(Action{a}));
    auto v = try_point_eu(sys, q, i, mode);
    if (!v) continue;
    EpsNum e = to_eps(*v);
    if (!best || e > *best) {
      best = e;
      name = sys.action_name(i, ls, Action{a});
    }
  }
  return {name, best};
}

/// Whether protocol p de facto implements prog in context c: the generated
/// system's actions agree with the derived protocol (computed in the
/// complete extension) at every in-scope local state where a player acts.
template <OrderedField F>
Verdict implements(const JointProtocol& p, const KbProgram& prog, const Context<F>& c,
                   Scope scope = Scope::kOwnTypeStandard, EuMode mode = EuMode::kExact) {
  System<F> gen = generate_system(p, c);
  System<F> comp = complete_system(gen);
  std::vector<std::map<LocalState, std::optional<Action>>> cache(c.num_players());
  for (std::size_t i = 0; i < c.num_players(); ++i) {
    for (std::size_t r = 0; r < gen.runs().size(); ++r) {
      if (!detail::in_scope(gen, r, i, scope)) continue;
      for (std::size_t m = 0; m + 1 < gen.num_times(r); ++m) {
        LocalState ls = gen.local_state({r, m}, i);
        auto it = cache[i].find(ls);
        if (it == cache[i].end())
          it = cache[i].emplace(ls, detail::derive_at(prog, comp, i, ls, mode)).first;
        Action actual = gen.action_at({r, m}, i);
        if (it->second == actual) continue;

        const Run& run = gen.run(r);
        Point cp{*comp.find_run(run.initial, run.played, run.chance), m};
        Witness w;
        w.player = i;
        w.player_name = c.form().player_name(i);
        w.point = {r, m};
        w.local_state = gen.describe_local_state(i, ls);
        w.prescribed = it->second ? gen.action_name(i, ls, *it->second) : "undefined";
        w.actual = gen.action_name(i, ls, actual);
        if (auto v = try_point_eu(comp, cp, i, mode)) w.factual_eu = to_eps(*v);
        std::tie(w.deviation, w.deviation_eu) = best_deviation(comp, cp, i, mode);
        if (w.factual_eu && w.deviation_eu) w.gap = *w.deviation_eu - *w.factual_eu;
        return {false, std::move(w)};
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace kbeq

#endif  // KBEQ_EPISTEMIC_HPP
