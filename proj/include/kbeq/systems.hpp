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

// Runs-and-systems semantics for games.
//
// A context fixes a game, a set G0 of initial global states (one type, i.e.
// pure strategy, per player) and one prior per player on G0. A joint protocol
// run in a context generates a system; the complete system contains the run
// of every joint pure strategy from every initial state and carries the
// generated system's prior, extended by zero.
//
// Normal-form runs have two times: the initial state and the state after the
// joint strategy executed. Extensive-form runs advance one tree edge per time
// step; players who do not move perform Skip.

#ifndef KBEQ_SYSTEMS_HPP
#define KBEQ_SYSTEMS_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kbeq/field.hpp"
#include "kbeq/games.hpp"

namespace kbeq {

/// What a player knows at a point.
struct LocalState {
  enum class Kind {
    kInitial,    // normal form, time 0: the type s_S
    kAtInfoset,  // standard extensive context: (s_S, I)
    kIdle,       // extensive context, not moving: (s_S, none)
    kTerminal,   // game over: (s_S, realized payoff)
  };
  Kind kind = Kind::kInitial;
  std::size_t type = 0;
  std::size_t infoset = 0;
  Rational payoff;

  friend bool operator==(const LocalState&, const LocalState&) = default;
  friend std::strong_ordering operator<=>(const LocalState& a, const LocalState& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.type <=> b.type; c != 0) return c;
    if (auto c = a.infoset <=> b.infoset; c != 0) return c;
    return a.payoff <=> b.payoff;
  }
};

/// Action taken at a local state: a strategy index (normal form), an action
/// index within the current information set (extensive form), or Skip.
struct Action {
  static constexpr std::size_t kSkip = static_cast<std::size_t>(-1);
  std::size_t index = kSkip;

  static Action skip() { return {}; }
  bool is_skip() const { return index == kSkip; }
  friend auto operator<=>(const Action&, const Action&) = default;
};

using Protocol = std::function<Action(const LocalState&)>;
using JointProtocol = std::vector<Protocol>;

enum class EuMode { kExact, kStandardPart };

/// Infinitesimal tremble rates: action a at information set I gets weight
/// eps^exponent when the behavioral strategy gives it probability zero.
struct TrembleSpec {
  std::size_t default_exponent = 1;
  /// Keyed by (global information-set index, action index).
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> exponents;

  std::size_t exponent(std::size_t infoset, std::size_t action) const {
    auto it = exponents.find({infoset, action});
    return it == exponents.end() ? default_exponent : it->second;
  }
  friend bool operator==(const TrembleSpec&, const TrembleSpec&) = default;
};

template <OrderedField F>
class Context {
 public:
  /// Normal-form context with per-player priors over `initial`.
  static Context normal_form(NormalFormGame game, std::vector<PureProfile> initial,
                             std::vector<std::vector<F>> priors) {
    Context c;
    c.form_ = std::make_shared<const NormalFormGame>(std::move(game));
    c.init(std::move(initial), std::move(priors));
    return c;
  }

  /// Standard extensive context: local states are (type, information set).
  static Context standard_extensive(std::shared_ptr<const GameTree> tree,
                                    std::vector<PureProfile> initial,
                                    std::vector<std::vector<F>> priors) {
    Context c;
    c.tree_ = std::move(tree);
    c.form_ = std::make_shared<const NormalFormGame>(strategic_form(*c.tree_));
    c.init(std::move(initial), std::move(priors));
    return c;
  }

  /// Common prior given as a joint distribution over every joint pure
  /// strategy (strategic-form table order); G0 is the full product.
  static Context normal_form_common(NormalFormGame game, const std::vector<F>& joint) {
    auto states = all_profiles(game);
    std::vector<std::vector<F>> priors(game.num_players(), joint);
    return normal_form(std::move(game), std::move(states), std::move(priors));
  }
  static Context extensive_common(std::shared_ptr<const GameTree> tree, const std::vector<F>& joint) {
    auto states = all_profiles(strategic_form(*tree));
    std::vector<std::vector<F>> priors(tree->num_players(), joint);
    return standard_extensive(std::move(tree), std::move(states), std::move(priors));
  }

  static std::vector<PureProfile> all_profiles(const NormalFormGame& g) {
    std::vector<PureProfile> out;
    for (std::size_t k = 0; k < g.num_profiles(); ++k) out.push_back(g.profile_at(k));
    return out;
  }

  bool is_extensive() const { return tree_ != nullptr; }
  const GameTree& tree() const { return *tree_; }
  std::shared_ptr<const GameTree> tree_ptr() const { return tree_; }
  /// The normal-form game, or the strategic form of the tree.
  const NormalFormGame& form() const { return *form_; }
  std::size_t num_players() const { return form_->num_players(); }

  const std::vector<PureProfile>& initial_states() const { return initial_; }
  const F& prior(std::size_t player, std::size_t state) const { return priors_[player][state]; }
  const std::vector<F>& prior(std::size_t player) const { return priors_[player]; }
  bool common_prior() const {
    return std::all_of(priors_.begin(), priors_.end(),
                       [&](const auto& p) { return p == priors_.front(); });
  }
  std::optional<std::size_t> state_index(const PureProfile& p) const {
    auto it = std::find(initial_.begin(), initial_.end(), p);
    if (it == initial_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - initial_.begin());
  }

 private:
  void init(std::vector<PureProfile> initial, std::vector<std::vector<F>> priors) {
    const NormalFormGame& g = *form_;
    if (initial.empty()) throw Error("context needs at least one initial state");
    std::vector<bool> seen(g.num_profiles(), false);
    for (const auto& s : initial) {
      if (s.size() != g.num_players()) throw Error("initial state has wrong arity");
      for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] >= g.num_strategies(i)) throw Error("initial state names an unknown strategy");
      std::size_t k = g.profile_index(s);
      if (seen[k]) throw Error("duplicate initial state " + g.profile_name(s));
      seen[k] = true;
    }
    if (priors.size() != g.num_players()) throw Error("context needs one prior per player");
    for (std::size_t i = 0; i < priors.size(); ++i) {
      if (priors[i].size() != initial.size()) throw Error("prior length differs from |G0|");
      F total(Rational(0));
      for (const F& m : priors[i]) {
        if (m.sign() < 0) throw Error("negative prior mass for " + g.player_name(i));
        total = total + m;
      }
      if (total != F(Rational(1))) throw Error("prior of " + g.player_name(i) + " does not sum to 1");
    }
    initial_ = std::move(initial);
    priors_ = std::move(priors);
  }

  std::shared_ptr<const NormalFormGame> form_;
  std::shared_ptr<const GameTree> tree_;
  std::vector<PureProfile> initial_;
  std::vector<std::vector<F>> priors_;
};

/// Common prior on G0^Gamma induced by a mixed profile: the product measure,
/// in strategic-form table order.
template <OrderedField F>
std::vector<F> prior_from_mixed(const NormalFormGame& g, const MixedProfile<F>& s) {
  check_mixed_profile(g, s);
  std::vector<F> out(g.num_profiles(), F(Rational(1)));
  for (std::size_t k = 0; k < out.size(); ++k) {
    PureProfile p = g.profile_at(k);
    for (std::size_t i = 0; i < p.size(); ++i) out[k] = out[k] * s[i][p[i]];
  }
  return out;
}

/// Behavioral strategy of one player with infinitesimal trembles on every
/// action the strategy does not use, renormalized per information set.
inline BehavioralStrategy<EpsNum> trembled(const GameTree& t, std::size_t player,
                                           const BehavioralStrategy<Rational>& b,
                                           const TrembleSpec& spec) {
  check_behavioral(t, player, b);
  BehavioralStrategy<EpsNum> out;
  const auto& mine = t.player_infosets(player);
  for (std::size_t j = 0; j < mine.size(); ++j) {
    std::vector<EpsNum> w;
    EpsNum total(0);
    for (std::size_t a = 0; a < b[j].size(); ++a) {
      std::size_t e = spec.exponent(mine[j], a);
      if (e < 1) throw Error("tremble exponents must be at least 1");
      w.push_back(b[j][a].is_zero() ? EpsNum::eps_pow(e) : EpsNum(b[j][a]));
      total += w.back();
    }
    for (auto& x : w) x /= total;
    out.push_back(std::move(w));
  }
  return out;
}

/// Full-support nonstandard common prior around a behavioral profile: the
/// product over players of the trembled strategies' mixed equivalents.
inline std::vector<EpsNum> tremble_prior(const GameTree& t, const BehavioralProfile<Rational>& b,
                                         const TrembleSpec& spec) {
  auto recall = has_perfect_recall(t);
  MixedProfile<EpsNum> mixed;
  for (std::size_t i = 0; i < t.num_players(); ++i) {
    if (!recall[i]) throw ImperfectRecall(t.player_name(i));
    mixed.push_back(behavioral_to_mixed(t, i, trembled(t, i, b.at(i), spec)));
  }
  return prior_from_mixed(strategic_form(t), mixed);
}

struct Run {
  /// Index into the context's initial states.
  std::size_t initial = 0;
  /// Strategic-form profile index of the joint pure strategy executed.
  std::size_t played = 0;
  /// Extensive form: node at each time. Empty for normal form.
  std::vector<std::size_t> path;
  /// Chance node and chosen child position, in path order.
  std::vector<std::pair<std::size_t, std::size_t>> chance;
};

struct Point {
  std::size_t run = 0;
  std::size_t time = 0;
  friend auto operator<=>(const Point&, const Point&) = default;
};

enum class SystemKind { kGenerated, kComplete };

class UndefinedExpectation : public Error {
 public:
  UndefinedExpectation() : Error("expected utility undefined: conditioning on a null event") {}
};

template <OrderedField F>
class System {
 public:
  const Context<F>& context() const { return ctx_; }
  SystemKind kind() const { return kind_; }
  const std::vector<Run>& runs() const { return runs_; }
  const Run& run(std::size_t r) const { return runs_.at(r); }
  std::size_t num_players() const { return ctx_.num_players(); }
  const F& prior(std::size_t player, std::size_t r) const { return prior_[player][r]; }
  const std::vector<F>& prior(std::size_t player) const { return prior_[player]; }

  std::size_t num_times(std::size_t r) const {
    return ctx_.is_extensive() ? runs_[r].path.size() : 2;
  }
  PureProfile played(std::size_t r) const { return ctx_.form().profile_at(runs_[r].played); }
  const PureProfile& types(std::size_t r) const { return ctx_.initial_states()[runs_[r].initial]; }

  LocalState local_state(const Point& pt, std::size_t player) const {
    const Run& r = runs_.at(pt.run);
    LocalState ls;
    ls.type = types(pt.run)[player];
    if (!ctx_.is_extensive()) {
      if (pt.time == 0) {
        ls.kind = LocalState::Kind::kInitial;
      } else {
        ls.kind = LocalState::Kind::kTerminal;
        ls.payoff = ctx_.form().payoff(r.played)[player];
      }
      return ls;
    }
    const TreeNode& n = ctx_.tree().node(r.path.at(pt.time));
    if (n.kind == NodeKind::kLeaf) {
      ls.kind = LocalState::Kind::kTerminal;
      ls.payoff = n.payoff[player];
    } else if (n.kind == NodeKind::kDecision && n.player == player) {
      ls.kind = LocalState::Kind::kAtInfoset;
      ls.infoset = n.infoset;
    } else {
      ls.kind = LocalState::Kind::kIdle;
    }
    return ls;
  }

  /// Action player i performs at a point of this system's runs.
  Action action_at(const Point& pt, std::size_t player) const {
    const Run& r = runs_.at(pt.run);
    if (!ctx_.is_extensive())
      return pt.time == 0 ? Action{played(pt.run)[player]} : Action::skip();
    const TreeNode& n = ctx_.tree().node(r.path.at(pt.time));
    if (n.kind != NodeKind::kDecision || n.player != player) return Action::skip();
    return Action{ctx_.tree().strategy_action(played(pt.run)[player], n.infoset)};
  }

  /// Every point sharing player i's local state with `ls`, in run order.
  const std::vector<Point>& points_with(std::size_t player, const LocalState& ls) const {
    static const std::vector<Point> kNone;
    auto it = classes_[player].find(ls);
    return it == classes_[player].end() ? kNone : it->second;
  }
  const std::map<LocalState, std::vector<Point>>& local_states(std::size_t player) const {
    return classes_[player];
  }

  std::optional<std::size_t> find_run(std::size_t initial, std::size_t played,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& chance_hint) const {
    auto it = block_.find({initial, played});
    if (it == block_.end()) return std::nullopt;
    auto [first, count] = it->second;
    // Prefer the run agreeing with the hint on every chance node both visit.
    for (std::size_t r = first; r < first + count; ++r) {
      bool agree = true;
      for (const auto& [node, child] : runs_[r].chance)
        for (const auto& [hn, hc] : chance_hint)
          if (hn == node && hc != child) agree = false;
      if (agree) return r;
    }
    return first;
  }

  /// Value to player i of continuing from point `pt` when i follows pure
  /// strategy `own` and everyone else follows the run's strategies.
  Rational continuation(const Point& pt, std::size_t player, std::size_t own) const {
    const Run& r = runs_.at(pt.run);
    PureProfile p = played(pt.run);
    if (!ctx_.is_extensive()) {
      if (pt.time > 0) return ctx_.form().payoff(r.played)[player];
      p[player] = own;
      return ctx_.form().payoff(p)[player];
    }
    p[player] = own;
    return ctx_.tree().fold(r.path.at(pt.time), p)[player];
  }

  // Builders ---------------------------------------------------------------

  /// The system R(P, gamma): one run per (initial state, chance realization).
  static System generate(const JointProtocol& protocol, const Context<F>& ctx) {
    System s(ctx, SystemKind::kGenerated);
    if (protocol.size() != ctx.num_players()) throw Error("joint protocol has wrong arity");
    for (std::size_t g = 0; g < ctx.initial_states().size(); ++g) {
      std::size_t k = s.protocol_profile(protocol, g);
      std::size_t first = s.runs_.size();
      s.expand(g, k);
      for (std::size_t r = first; r < s.runs_.size(); ++r) {
        s.check_appropriate(protocol, r);
        for (std::size_t i = 0; i < ctx.num_players(); ++i)
          s.prior_[i].push_back(ctx.prior(i, g) * F(s.chance_mass(r)));
      }
    }
    s.index();
    return s;
  }

  /// Complete system extending `generated`: every joint pure strategy from
  /// every initial state; runs outside `generated` get prior mass zero.
  static System complete(const System& generated) {
    const Context<F>& ctx = generated.ctx_;
    System s(ctx, SystemKind::kComplete);
    std::map<std::tuple<std::size_t, std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>,
             std::size_t>
        factual;
    for (std::size_t r = 0; r < generated.runs_.size(); ++r) {
      const Run& run = generated.runs_[r];
      factual.emplace(std::make_tuple(run.initial, run.played, run.chance), r);
    }
    for (std::size_t g = 0; g < ctx.initial_states().size(); ++g) {
      for (std::size_t k = 0; k < ctx.form().num_profiles(); ++k) {
        std::size_t first = s.runs_.size();
        s.expand(g, k);
        for (std::size_t r = first; r < s.runs_.size(); ++r) {
          auto it = factual.find(std::make_tuple(g, k, s.runs_[r].chance));
          for (std::size_t i = 0; i < ctx.num_players(); ++i)
            s.prior_[i].push_back(it == factual.end() ? F(Rational(0))
                                                      : generated.prior_[i][it->second]);
          s.factual_.push_back(it != factual.end());
        }
      }
    }
    s.index();
    return s;
  }

  /// Whether a run of a complete system belongs to the generated system it
  /// extends.
  bool factual(std::size_t r) const {
    return kind_ == SystemKind::kGenerated || factual_.at(r);
  }

  Rational chance_mass(std::size_t r) const {
    Rational m(1);
    if (!ctx_.is_extensive()) return m;
    for (const auto& [node, child] : runs_[r].chance) m *= ctx_.tree().node(node).chance[child];
    return m;
  }

  std::string describe_local_state(std::size_t player, const LocalState& ls) const {
    const NormalFormGame& g = ctx_.form();
    std::string s = "s_" + g.strategies(player)[ls.type];
    switch (ls.kind) {
      case LocalState::Kind::kInitial: return s;
      case LocalState::Kind::kAtInfoset: return "(" + s + ", " + ctx_.tree().infoset(ls.infoset).id + ")";
      case LocalState::Kind::kIdle: return "(" + s + ", idle)";
      case LocalState::Kind::kTerminal: return "(" + s + ", payoff " + ls.payoff.to_string() + ")";
    }
    return s;
  }

  /// Name of an action player i takes at local state `ls`.
  std::string action_name(std::size_t player, const LocalState& ls, Action a) const {
    if (a.is_skip()) return "Skip";
    if (ls.kind == LocalState::Kind::kAtInfoset) return ctx_.tree().infoset(ls.infoset).actions.at(a.index);
    return ctx_.form().strategies(player).at(a.index);
  }

 private:
  System(Context<F> ctx, SystemKind kind) : ctx_(std::move(ctx)), kind_(kind) {
    prior_.resize(ctx_.num_players());
    classes_.resize(ctx_.num_players());
  }

  std::size_t protocol_profile(const JointProtocol& protocol, std::size_t g) const {
    const PureProfile& types = ctx_.initial_states()[g];
    PureProfile p(ctx_.num_players());
    for (std::size_t i = 0; i < p.size(); ++i) {
      LocalState ls;
      ls.type = types[i];
      if (!ctx_.is_extensive()) {
        ls.kind = LocalState::Kind::kInitial;
        Action a = protocol[i](ls);
        if (a.is_skip() || a.index >= ctx_.form().num_strategies(i))
          throw Error("protocol of " + ctx_.form().player_name(i) + " is not appropriate at " +
                      describe_local_state(i, ls));
        p[i] = a.index;
        continue;
      }
      const GameTree& t = ctx_.tree();
      std::size_t s = 0;
      for (std::size_t k : t.player_infosets(i)) {
        ls.kind = LocalState::Kind::kAtInfoset;
        ls.infoset = k;
        Action a = protocol[i](ls);
        if (a.is_skip() || a.index >= t.infoset(k).actions.size())
          throw Error("protocol of " + t.player_name(i) + " is not appropriate at " +
                      describe_local_state(i, ls));
        s = s * t.infoset(k).actions.size() + a.index;
      }
      p[i] = s;
    }
    return ctx_.form().profile_index(p);
  }

  void check_appropriate(const JointProtocol& protocol, std::size_t r) {
    for (std::size_t m = 0; m < num_times(r); ++m) {
      for (std::size_t i = 0; i < ctx_.num_players(); ++i) {
        LocalState ls = local_state({r, m}, i);
        if (ls.kind == LocalState::Kind::kInitial || ls.kind == LocalState::Kind::kAtInfoset) continue;
        if (!protocol[i](ls).is_skip())
          throw Error("protocol of " + ctx_.form().player_name(i) + " must Skip at " +
                      describe_local_state(i, ls));
      }
    }
  }

  /// Appends the runs of joint pure strategy `k` from initial state `g`.
  void expand(std::size_t g, std::size_t k) {
    std::size_t first = runs_.size();
    if (!ctx_.is_extensive()) {
      runs_.push_back(Run{g, k, {}, {}});
    } else {
      PureProfile p = ctx_.form().profile_at(k);
      Run proto{g, k, {}, {}};
      walk(proto, ctx_.tree().root(), p);
    }
    block_[{g, k}] = {first, runs_.size() - first};
  }

  void walk(Run prefix, std::size_t node, const PureProfile& p) {
    const GameTree& t = ctx_.tree();
    prefix.path.push_back(node);
    const TreeNode& n = t.node(node);
    switch (n.kind) {
      case NodeKind::kLeaf:
        runs_.push_back(std::move(prefix));
        return;
      case NodeKind::kDecision:
        walk(std::move(prefix), n.children[t.strategy_action(p[n.player], n.infoset)], p);
        return;
      case NodeKind::kChance:
        for (std::size_t e = 0; e < n.children.size(); ++e) {
          Run branch = prefix;
          branch.chance.emplace_back(node, e);
          walk(std::move(branch), n.children[e], p);
        }
        return;
    }
  }

  void index() {
    for (std::size_t r = 0; r < runs_.size(); ++r)
      for (std::size_t m = 0; m < num_times(r); ++m)
        for (std::size_t i = 0; i < ctx_.num_players(); ++i)
          classes_[i][local_state({r, m}, i)].push_back({r, m});
  }

  Context<F> ctx_;
  SystemKind kind_;
  std::vector<Run> runs_;
  std::vector<std::vector<F>> prior_;
  std::vector<bool> factual_;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> block_;
  std::vector<std::map<LocalState, std::vector<Point>>> classes_;
};

/// Pnf / Pef: at type s_S play S (at information set I, play S's action there).
template <OrderedField F>
JointProtocol standard_protocol(const Context<F>& ctx) {
  JointProtocol out;
  std::shared_ptr<const GameTree> tree = ctx.is_extensive() ? ctx.tree_ptr() : nullptr;
  for (std::size_t i = 0; i < ctx.num_players(); ++i) {
    out.push_back([tree](const LocalState& ls) -> Action {
      switch (ls.kind) {
        case LocalState::Kind::kInitial: return Action{ls.type};
        case LocalState::Kind::kAtInfoset: return Action{tree->strategy_action(ls.type, ls.infoset)};
        default: return Action::skip();
      }
    });
  }
  return out;
}

template <OrderedField F>
System<F> generate_system(const JointProtocol& p, const Context<F>& ctx) {
  return System<F>::generate(p, ctx);
}

/// Complete system extending the standard protocol's generated system.
template <OrderedField F>
System<F> complete_system(const Context<F>& ctx) {
  return System<F>::complete(System<F>::generate(standard_protocol(ctx), ctx));
}

template <OrderedField F>
System<F> complete_system(const System<F>& generated) {
  return System<F>::complete(generated);
}

/// K_i(pt): points where player i has the same local state as at `pt`.
template <OrderedField F>
const std::vector<Point>& indistinguishable(const System<F>& sys, const Point& pt, std::size_t i) {
  return sys.points_with(i, sys.local_state(pt, i));
}

/// Runs through K_i(pt), each with the first time it enters the class.
template <OrderedField F>
std::vector<Point> runs_through(const System<F>& sys, const Point& pt, std::size_t i) {
  std::vector<Point> out;
  for (const Point& q : indistinguishable(sys, pt, i))
    if (out.empty() || out.back().run != q.run) out.push_back(q);
  return out;
}

/// Player i's prior conditioned on the runs through K_i(pt), as a dense
/// vector over runs; nullopt when that set of runs has mass zero.
template <OrderedField F>
std::optional<std::vector<F>> condition_prior(const System<F>& sys, const Point& pt, std::size_t i) {
  F total(Rational(0));
  auto through = runs_through(sys, pt, i);
  for (const Point& q : through) total = total + sys.prior(i, q.run);
  if (total.is_zero()) return std::nullopt;
  std::vector<F> out(sys.runs().size(), F(Rational(0)));
  for (const Point& q : through) out[q.run] = sys.prior(i, q.run) / total;
  return out;
}

/// Player i's expected utility at `pt` under the conditioned prior, or
/// nullopt when conditioning is undefined.
///
/// Each conditioned run contributes its continuation from the point where it
/// enters K_i(pt), with i following the strategy i plays in pt's own run and
/// everyone else following the conditioned run. At factual points this is
/// the ordinary conditional expectation; at a counterfactual point (same
/// local state, different own strategy) it is the deviation's value against
/// the same beliefs.
template <OrderedField F>
std::optional<F> try_point_eu(const System<F>& sys, const Point& pt, std::size_t i,
                              EuMode mode = EuMode::kExact) {
  std::size_t own = sys.played(pt.run)[i];
  F total(Rational(0));
  F acc(Rational(0));
  for (const Point& q : runs_through(sys, pt, i)) {
    const F& w = sys.prior(i, q.run);
    if (w.is_zero()) continue;
    total = total + w;
    acc = acc + w * F(sys.continuation(q, i, own));
  }
  if (total.is_zero()) return std::nullopt;
  F eu = acc / total;
  if (mode == EuMode::kStandardPart) return F(standard_part(eu));
  return eu;
}

template <OrderedField F>
F point_eu(const System<F>& sys, const Point& pt, std::size_t i, EuMode mode = EuMode::kExact) {
  auto v = try_point_eu(sys, pt, i, mode);
  if (!v) throw UndefinedExpectation();
  return *v;
}

}  // namespace kbeq

#endif  // KBEQ_SYSTEMS_HPP
