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

// Normal-form and extensive-form games.
//
// Players, strategies, actions and information sets are addressed by index
// internally; names are kept for diagnostics and rendering. Extensive-form
// games are declared through ExtensiveFormGame and compiled into an immutable
// GameTree once they validate.

#ifndef KBEQ_GAMES_HPP
#define KBEQ_GAMES_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kbeq/field.hpp"
#include "kbeq/rational.hpp"

namespace kbeq {

/// One pure strategy index per player.
using PureProfile = std::vector<std::size_t>;

/// Probability per pure strategy of one player.
template <class F>
using MixedStrategy = std::vector<F>;

/// One mixed strategy per player.
template <class F>
using MixedProfile = std::vector<MixedStrategy<F>>;

/// For each of a player's information sets (in GameTree order), the
/// probability of each action there.
template <class F>
using BehavioralStrategy = std::vector<std::vector<F>>;

template <class F>
using BehavioralProfile = std::vector<BehavioralStrategy<F>>;

/// Structural problem found by validation. `where` names the offending entry.
struct Violation {
  std::string where;
  std::string message;
  friend bool operator==(const Violation&, const Violation&) = default;
};

class InvalidGame : public Error {
 public:
  explicit InvalidGame(std::vector<Violation> v)
      : Error(v.empty() ? "invalid game" : v.front().where + ": " + v.front().message),
        violations_(std::move(v)) {}
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// ---------------------------------------------------------------------------
// Normal form

class NormalFormGame {
 public:
  NormalFormGame() = default;
  NormalFormGame(std::vector<std::string> players, std::vector<std::vector<std::string>> strategies)
      : players_(std::move(players)), strategies_(std::move(strategies)) {
    if (strategies_.size() != players_.size())
      throw Error("normal-form game needs one strategy list per player");
    std::size_t n = 1;
    for (const auto& s : strategies_) n *= std::max<std::size_t>(s.size(), 1);
    table_.assign(strategies_.empty() ? 0 : n, std::nullopt);
  }

  std::size_t num_players() const { return players_.size(); }
  const std::vector<std::string>& players() const { return players_; }
  const std::string& player_name(std::size_t i) const { return players_.at(i); }
  const std::vector<std::string>& strategies(std::size_t i) const { return strategies_.at(i); }
  std::size_t num_strategies(std::size_t i) const { return strategies_.at(i).size(); }
  std::size_t num_profiles() const { return table_.size(); }

  std::optional<std::size_t> player_index(std::string_view name) const {
    for (std::size_t i = 0; i < players_.size(); ++i)
      if (players_[i] == name) return i;
    return std::nullopt;
  }
  std::optional<std::size_t> strategy_index(std::size_t player, std::string_view name) const {
    const auto& s = strategies_.at(player);
    for (std::size_t k = 0; k < s.size(); ++k)
      if (s[k] == name) return k;
    return std::nullopt;
  }

  /// Row-major position of a joint pure strategy; the last player varies fastest.
  std::size_t profile_index(std::span<const std::size_t> p) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < p.size(); ++i) idx = idx * strategies_[i].size() + p[i];
    return idx;
  }
  PureProfile profile_at(std::size_t index) const {
    PureProfile p(players_.size());
    for (std::size_t i = players_.size(); i-- > 0;) {
      p[i] = index % strategies_[i].size();
      index /= strategies_[i].size();
    }
    return p;
  }

  void set_payoff(std::span<const std::size_t> p, std::vector<Rational> u) {
    table_.at(profile_index(p)) = std::move(u);
  }
  bool has_payoff(std::size_t index) const { return table_.at(index).has_value(); }
  const std::vector<Rational>& payoff(std::size_t index) const {
    const auto& e = table_.at(index);
    if (!e) throw Error("missing payoff entry " + profile_name(profile_at(index)));
    return *e;
  }
  const std::vector<Rational>& payoff(std::span<const std::size_t> p) const {
    return payoff(profile_index(p));
  }

  /// `(T,L)` style name of a joint pure strategy.
  std::string profile_name(std::span<const std::size_t> p) const {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) s += ",";
      s += strategies_[i][p[i]];
    }
    return s + ")";
  }

  friend bool operator==(const NormalFormGame&, const NormalFormGame&) = default;

 private:
  std::vector<std::string> players_;
  std::vector<std::vector<std::string>> strategies_;
  std::vector<std::optional<std::vector<Rational>>> table_;
};

inline std::vector<Violation> validate_game(const NormalFormGame& g) {
  std::vector<Violation> out;
  if (g.num_players() == 0) out.push_back({"players", "game has no players"});
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    if (g.num_strategies(i) == 0)
      out.push_back({"strategies " + g.player_name(i), "empty strategy set"});
    std::set<std::string> seen;
    for (const auto& s : g.strategies(i))
      if (!seen.insert(s).second)
        out.push_back({"strategies " + g.player_name(i), "duplicate strategy " + s});
  }
  if (!out.empty()) return out;
  for (std::size_t k = 0; k < g.num_profiles(); ++k) {
    PureProfile p = g.profile_at(k);
    if (!g.has_payoff(k)) {
      out.push_back({"payoff " + g.profile_name(p), "missing payoff entry"});
    } else if (g.payoff(k).size() != g.num_players()) {
      out.push_back({"payoff " + g.profile_name(p),
                     "payoff has " + std::to_string(g.payoff(k).size()) + " entries, expected " +
                         std::to_string(g.num_players())});
    }
  }
  return out;
}

template <class F>
void check_mixed_profile(const NormalFormGame& g, const MixedProfile<F>& s) {
  if (s.size() != g.num_players()) throw Error("mixed profile needs one strategy per player");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].size() != g.num_strategies(i))
      throw Error("mixed strategy of " + g.player_name(i) + " has wrong length");
    F total(Rational(0));
    for (const F& p : s[i]) {
      if (p.sign() < 0) throw Error("negative probability for " + g.player_name(i));
      total = total + p;
    }
    if (total != F(Rational(1)))
      throw Error("mixed strategy of " + g.player_name(i) + " does not sum to 1");
  }
}

/// Product-measure expectation of every player's utility.
template <class F>
std::vector<F> expected_utility(const NormalFormGame& g, const MixedProfile<F>& s) {
  check_mixed_profile(g, s);
  std::vector<F> eu(g.num_players(), F(Rational(0)));
  for (std::size_t k = 0; k < g.num_profiles(); ++k) {
    PureProfile p = g.profile_at(k);
    F w(Rational(1));
    for (std::size_t i = 0; i < p.size() && !w.is_zero(); ++i) w = w * s[i][p[i]];
    if (w.is_zero()) continue;
    const auto& u = g.payoff(k);
    for (std::size_t i = 0; i < eu.size(); ++i) eu[i] = eu[i] + w * F(u[i]);
  }
  return eu;
}

/// Mixed profile putting all mass on one joint pure strategy.
template <class F = Rational>
MixedProfile<F> point_mass(const NormalFormGame& g, std::span<const std::size_t> p) {
  MixedProfile<F> s(g.num_players());
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i].assign(g.num_strategies(i), F(Rational(0)));
    s[i][p[i]] = F(Rational(1));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Extensive form, as declared

struct DecisionDecl {
  std::size_t player = 0;
  std::string infoset;
  /// (action name, child node id) in declaration order.
  std::vector<std::pair<std::string, std::string>> moves;
  friend bool operator==(const DecisionDecl&, const DecisionDecl&) = default;
};
struct ChanceDecl {
  /// (child node id, probability) in declaration order.
  std::vector<std::pair<std::string, Rational>> outcomes;
  friend bool operator==(const ChanceDecl&, const ChanceDecl&) = default;
};
struct LeafDecl {
  std::vector<Rational> payoff;
  friend bool operator==(const LeafDecl&, const LeafDecl&) = default;
};
using NodeDecl = std::variant<DecisionDecl, ChanceDecl, LeafDecl>;

class ExtensiveFormGame {
 public:
  ExtensiveFormGame() = default;
  explicit ExtensiveFormGame(std::vector<std::string> players) : players_(std::move(players)) {}

  const std::vector<std::string>& players() const { return players_; }
  std::size_t num_players() const { return players_.size(); }
  std::optional<std::size_t> player_index(std::string_view name) const {
    for (std::size_t i = 0; i < players_.size(); ++i)
      if (players_[i] == name) return i;
    return std::nullopt;
  }

  void add_node(std::string id, NodeDecl node) { nodes_.emplace_back(std::move(id), std::move(node)); }
  void add_decision(std::string id, std::size_t player, std::string infoset,
                    std::vector<std::pair<std::string, std::string>> moves) {
    add_node(std::move(id), DecisionDecl{player, std::move(infoset), std::move(moves)});
  }
  void add_chance(std::string id, std::vector<std::pair<std::string, Rational>> outcomes) {
    add_node(std::move(id), ChanceDecl{std::move(outcomes)});
  }
  void add_leaf(std::string id, std::vector<Rational> payoff) {
    add_node(std::move(id), LeafDecl{std::move(payoff)});
  }
  void set_root(std::string id) { root_ = std::move(id); }

  const std::vector<std::pair<std::string, NodeDecl>>& nodes() const { return nodes_; }
  const std::string& root() const { return root_; }

  friend bool operator==(const ExtensiveFormGame&, const ExtensiveFormGame&) = default;

 private:
  std::vector<std::string> players_;
  std::vector<std::pair<std::string, NodeDecl>> nodes_;
  std::string root_;
};

inline std::vector<Violation> validate_game(const ExtensiveFormGame& g) {
  std::vector<Violation> out;
  if (g.num_players() == 0) out.push_back({"players", "game has no players"});
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < g.nodes().size(); ++k)
    if (!index.emplace(g.nodes()[k].first, k).second)
      out.push_back({"node " + g.nodes()[k].first, "duplicate node id"});

  std::map<std::string, std::size_t> parents;
  auto child_ref = [&](const std::string& from, const std::string& child) {
    if (!index.count(child)) {
      out.push_back({"node " + from, "unknown child " + child});
      return;
    }
    ++parents[child];
  };
  // Per information set: owning player and action set, taken from the first
  // member node.
  std::map<std::string, std::pair<std::size_t, std::vector<std::string>>> infosets;
  for (const auto& [id, node] : g.nodes()) {
    if (const auto* d = std::get_if<DecisionDecl>(&node)) {
      if (d->player >= g.num_players()) out.push_back({"node " + id, "unknown player"});
      if (d->moves.empty()) out.push_back({"node " + id, "decision node without moves"});
      std::set<std::string> names;
      std::vector<std::string> acts;
      for (const auto& [a, c] : d->moves) {
        if (!names.insert(a).second) out.push_back({"node " + id, "duplicate action " + a});
        acts.push_back(a);
        child_ref(id, c);
      }
      auto [it, fresh] = infosets.emplace(d->infoset, std::make_pair(d->player, acts));
      if (!fresh) {
        if (it->second.first != d->player)
          out.push_back({"infoset " + d->infoset, "nodes of different players"});
        std::vector<std::string> a1 = it->second.second, a2 = acts;
        std::sort(a1.begin(), a1.end());
        std::sort(a2.begin(), a2.end());
        if (a1 != a2) out.push_back({"infoset " + d->infoset, "nodes offer different actions"});
      }
    } else if (const auto* c = std::get_if<ChanceDecl>(&node)) {
      if (c->outcomes.empty()) out.push_back({"node " + id, "chance node without outcomes"});
      Rational mass;
      for (const auto& [child, p] : c->outcomes) {
        if (p.sign() <= 0)
          out.push_back({"node " + id, "chance probability " + p.to_string() + " is not positive"});
        mass += p;
        child_ref(id, child);
      }
      if (mass != Rational(1))
        out.push_back({"node " + id, "chance mass " + mass.to_string() + " != 1"});
    } else {
      const auto& l = std::get<LeafDecl>(node);
      if (l.payoff.size() != g.num_players())
        out.push_back({"node " + id, "leaf has " + std::to_string(l.payoff.size()) +
                                         " payoffs, expected " + std::to_string(g.num_players())});
    }
  }
  if (g.root().empty() || !index.count(g.root())) {
    out.push_back({"root", "root node " + (g.root().empty() ? std::string("missing") : g.root()) +
                               " not declared"});
    return out;
  }
  if (parents.count(g.root())) out.push_back({"node " + g.root(), "root has a parent"});
  for (const auto& [id, count] : parents)
    if (count > 1) out.push_back({"node " + id, "node has " + std::to_string(count) + " parents"});

  // Reachability from the root; together with the parent counts this makes
  // the node graph a rooted tree.
  std::set<std::string> seen;
  std::vector<std::string> stack{g.root()};
  while (!stack.empty()) {
    std::string id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    const NodeDecl& node = g.nodes()[index.at(id)].second;
    if (const auto* d = std::get_if<DecisionDecl>(&node)) {
      for (const auto& mc : d->moves)
        if (index.count(mc.second)) stack.push_back(mc.second);
    } else if (const auto* c = std::get_if<ChanceDecl>(&node)) {
      for (const auto& cp : c->outcomes)
        if (index.count(cp.first)) stack.push_back(cp.first);
    }
  }
  for (const auto& [id, node] : g.nodes())
    if (!seen.count(id)) out.push_back({"node " + id, "unreachable from root"});
  return out;
}

// ---------------------------------------------------------------------------
// Compiled tree

enum class NodeKind { kDecision, kChance, kLeaf };

struct TreeNode {
  std::string id;
  NodeKind kind = NodeKind::kLeaf;
  std::size_t player = 0;   // decision
  std::size_t infoset = 0;  // decision: global information-set index
  /// Children in declaration order; for decisions, child k follows the
  /// node's k-th action in its information set's action order.
  std::vector<std::size_t> children;
  std::vector<Rational> chance;  // chance: probability per child
  std::vector<Rational> payoff;  // leaf
  std::optional<std::size_t> parent;
  std::size_t parent_edge = 0;  // position among the parent's children
  std::size_t depth = 0;
};

struct InfoSet {
  std::string id;
  std::size_t player = 0;
  std::vector<std::size_t> nodes;
  std::vector<std::string> actions;
};

/// Validated, index-based extensive-form game.
class GameTree {
 public:
  /// Throws InvalidGame when `g` has violations.
  explicit GameTree(const ExtensiveFormGame& g) : players_(g.players()) {
    auto v = validate_game(g);
    if (!v.empty()) throw InvalidGame(std::move(v));

    std::map<std::string, std::size_t> index;
    for (const auto& [id, node] : g.nodes()) {
      index.emplace(id, nodes_.size());
      nodes_.emplace_back();
      nodes_.back().id = id;
    }
    std::map<std::string, std::size_t> infoset_index;
    player_infosets_.resize(players_.size());
    for (std::size_t k = 0; k < g.nodes().size(); ++k) {
      const NodeDecl& decl = g.nodes()[k].second;
      TreeNode& n = nodes_[k];
      if (const auto* d = std::get_if<DecisionDecl>(&decl)) {
        n.kind = NodeKind::kDecision;
        n.player = d->player;
        auto [it, fresh] = infoset_index.emplace(d->infoset, infosets_.size());
        if (fresh) {
          InfoSet is{d->infoset, d->player, {}, {}};
          for (const auto& mc : d->moves) is.actions.push_back(mc.first);
          player_infosets_[d->player].push_back(infosets_.size());
          infosets_.push_back(std::move(is));
        }
        n.infoset = it->second;
        InfoSet& is = infosets_[n.infoset];
        is.nodes.push_back(k);
        n.children.assign(is.actions.size(), 0);
        for (const auto& [a, c] : d->moves) {
          auto pos = std::find(is.actions.begin(), is.actions.end(), a) - is.actions.begin();
          n.children[pos] = index.at(c);
        }
      } else if (const auto* c = std::get_if<ChanceDecl>(&decl)) {
        n.kind = NodeKind::kChance;
        for (const auto& [child, p] : c->outcomes) {
          n.children.push_back(index.at(child));
          n.chance.push_back(p);
        }
      } else {
        n.kind = NodeKind::kLeaf;
        n.payoff = std::get<LeafDecl>(decl).payoff;
      }
    }
    root_ = index.at(g.root());
    std::vector<std::size_t> stack{root_};
    while (!stack.empty()) {
      std::size_t k = stack.back();
      stack.pop_back();
      for (std::size_t e = 0; e < nodes_[k].children.size(); ++e) {
        std::size_t c = nodes_[k].children[e];
        nodes_[c].parent = k;
        nodes_[c].parent_edge = e;
        nodes_[c].depth = nodes_[k].depth + 1;
        stack.push_back(c);
      }
    }
    build_strategy_names();
  }

  std::size_t num_players() const { return players_.size(); }
  const std::vector<std::string>& players() const { return players_; }
  const std::string& player_name(std::size_t i) const { return players_.at(i); }
  std::size_t root() const { return root_; }
  const TreeNode& node(std::size_t k) const { return nodes_.at(k); }
  std::size_t num_nodes() const { return nodes_.size(); }
  const InfoSet& infoset(std::size_t k) const { return infosets_.at(k); }
  std::size_t num_infosets() const { return infosets_.size(); }
  /// Global information-set indices owned by player `i`, in declaration order.
  const std::vector<std::size_t>& player_infosets(std::size_t i) const {
    return player_infosets_.at(i);
  }
  /// Position of global information set `k` within its owner's list.
  std::size_t local_infoset(std::size_t k) const {
    const auto& mine = player_infosets_[infosets_[k].player];
    return std::find(mine.begin(), mine.end(), k) - mine.begin();
  }
  std::optional<std::size_t> infoset_index(std::string_view id) const {
    for (std::size_t k = 0; k < infosets_.size(); ++k)
      if (infosets_[k].id == id) return k;
    return std::nullopt;
  }
  std::optional<std::size_t> node_index(std::string_view id) const {
    for (std::size_t k = 0; k < nodes_.size(); ++k)
      if (nodes_[k].id == id) return k;
    return std::nullopt;
  }
  std::optional<std::size_t> action_index(std::size_t infoset, std::string_view name) const {
    const auto& a = infosets_.at(infoset).actions;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k] == name) return k;
    return std::nullopt;
  }

  /// Pure strategies assign an action to every information set of the
  /// player, reachable or not; they are numbered in mixed radix with the
  /// first information set most significant.
  std::size_t num_pure_strategies(std::size_t i) const { return strategy_names_.at(i).size(); }
  const std::vector<std::string>& strategy_names(std::size_t i) const {
    return strategy_names_.at(i);
  }
  /// Action index that pure strategy `s` of the owner picks at global
  /// information set `k`.
  std::size_t strategy_action(std::size_t s, std::size_t k) const {
    const auto& mine = player_infosets_[infosets_[k].player];
    std::size_t pos = local_infoset(k);
    for (std::size_t j = mine.size(); j-- > pos + 1;) s /= infosets_[mine[j]].actions.size();
    return s % infosets_[k].actions.size();
  }
  /// Pure strategy of player i with action `a` at `k` and otherwise as `s`.
  std::size_t with_action(std::size_t s, std::size_t k, std::size_t a) const {
    const auto& mine = player_infosets_[infosets_[k].player];
    std::size_t pos = local_infoset(k);
    std::size_t stride = 1;
    for (std::size_t j = mine.size(); j-- > pos + 1;) stride *= infosets_[mine[j]].actions.size();
    std::size_t cur = strategy_action(s, k);
    return s - cur * stride + a * stride;
  }

  /// Chance-expected payoff vector below `start` when every player follows
  /// the given pure strategy.
  std::vector<Rational> fold(std::size_t start, std::span<const std::size_t> pure) const {
    const TreeNode& n = nodes_[start];
    switch (n.kind) {
      case NodeKind::kLeaf:
        return n.payoff;
      case NodeKind::kDecision:
        return fold(n.children[strategy_action(pure[n.player], n.infoset)], pure);
      case NodeKind::kChance: {
        std::vector<Rational> acc(players_.size());
        for (std::size_t e = 0; e < n.children.size(); ++e) {
          auto sub = fold(n.children[e], pure);
          for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += n.chance[e] * sub[i];
        }
        return acc;
      }
    }
    return {};
  }

 private:
  void build_strategy_names() {
    strategy_names_.resize(players_.size());
    for (std::size_t i = 0; i < players_.size(); ++i) {
      std::vector<std::string> names{""};
      for (std::size_t k : player_infosets_[i]) {
        std::vector<std::string> next;
        for (const auto& prefix : names)
          for (const auto& a : infosets_[k].actions)
            next.push_back(prefix.empty() ? a : prefix + "." + a);
        names = std::move(next);
      }
      if (player_infosets_[i].empty()) names = {"_"};
      strategy_names_[i] = std::move(names);
    }
  }

  std::vector<std::string> players_;
  std::vector<TreeNode> nodes_;
  std::vector<InfoSet> infosets_;
  std::vector<std::vector<std::size_t>> player_infosets_;
  std::vector<std::vector<std::string>> strategy_names_;
  std::size_t root_ = 0;
};

/// Per player: do all nodes of each of the player's information sets share
/// the same own experience (sequence of own information sets and actions on
/// the path from the root)?
inline std::vector<bool> has_perfect_recall(const GameTree& t) {
  std::vector<bool> ok(t.num_players(), true);
  auto experience = [&](std::size_t node, std::size_t player) {
    std::vector<std::pair<std::size_t, std::size_t>> exp;
    std::size_t cur = node;
    while (t.node(cur).parent) {
      std::size_t p = *t.node(cur).parent;
      const TreeNode& pn = t.node(p);
      if (pn.kind == NodeKind::kDecision && pn.player == player)
        exp.emplace_back(pn.infoset, t.node(cur).parent_edge);
      cur = p;
    }
    std::reverse(exp.begin(), exp.end());
    return exp;
  };
  for (std::size_t k = 0; k < t.num_infosets(); ++k) {
    const InfoSet& is = t.infoset(k);
    auto first = experience(is.nodes.front(), is.player);
    for (std::size_t n : is.nodes)
      if (experience(n, is.player) != first) ok[is.player] = false;
  }
  return ok;
}

/// Strategic-form table of an extensive-form game, chance folded in.
inline NormalFormGame strategic_form(const GameTree& t) {
  std::vector<std::vector<std::string>> strategies;
  for (std::size_t i = 0; i < t.num_players(); ++i) strategies.push_back(t.strategy_names(i));
  NormalFormGame g(t.players(), std::move(strategies));
  for (std::size_t k = 0; k < g.num_profiles(); ++k) {
    PureProfile p = g.profile_at(k);
    g.set_payoff(p, t.fold(t.root(), p));
  }
  return g;
}

class ImperfectRecall : public Error {
 public:
  explicit ImperfectRecall(const std::string& player)
      : Error("player " + player + " does not have perfect recall") {}
};

template <class F>
void check_behavioral(const GameTree& t, std::size_t player, const BehavioralStrategy<F>& b) {
  const auto& mine = t.player_infosets(player);
  if (b.size() != mine.size())
    throw Error("behavioral strategy of " + t.player_name(player) + " has wrong size");
  for (std::size_t j = 0; j < mine.size(); ++j) {
    const InfoSet& is = t.infoset(mine[j]);
    if (b[j].size() != is.actions.size())
      throw Error("behavioral strategy at " + is.id + " has wrong size");
    F total(Rational(0));
    for (const F& p : b[j]) {
      if (p.sign() < 0) throw Error("negative probability at " + is.id);
      total = total + p;
    }
    if (total != F(Rational(1))) throw Error("behavioral strategy at " + is.id + " does not sum to 1");
  }
}

/// Mixed strategy over strategic-form pure strategies: the probability of a
/// pure strategy is the product of its prescribed actions' probabilities.
template <class F>
MixedStrategy<F> behavioral_to_mixed(const GameTree& t, std::size_t player,
                                     const BehavioralStrategy<F>& b) {
  if (!has_perfect_recall(t)[player]) throw ImperfectRecall(t.player_name(player));
  check_behavioral(t, player, b);
  const auto& mine = t.player_infosets(player);
  MixedStrategy<F> out(t.num_pure_strategies(player), F(Rational(1)));
  for (std::size_t s = 0; s < out.size(); ++s)
    for (std::size_t j = 0; j < mine.size(); ++j)
      out[s] = out[s] * b[j][t.strategy_action(s, mine[j])];
  return out;
}

template <class F>
MixedProfile<F> behavioral_to_mixed(const GameTree& t, const BehavioralProfile<F>& b) {
  MixedProfile<F> out;
  for (std::size_t i = 0; i < t.num_players(); ++i) out.push_back(behavioral_to_mixed(t, i, b.at(i)));
  return out;
}

/// Expected utility of a behavioral profile computed directly on the tree.
template <class F>
std::vector<F> tree_expected_utility(const GameTree& t, const BehavioralProfile<F>& b,
                                     std::size_t start) {
  const TreeNode& n = t.node(start);
  std::vector<F> acc(t.num_players(), F(Rational(0)));
  if (n.kind == NodeKind::kLeaf) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = F(n.payoff[i]);
    return acc;
  }
  for (std::size_t e = 0; e < n.children.size(); ++e) {
    F w = n.kind == NodeKind::kChance ? F(n.chance[e])
                                      : b[n.player][t.local_infoset(n.infoset)][e];
    if (w.is_zero()) continue;
    auto sub = tree_expected_utility(t, b, n.children[e]);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] + w * sub[i];
  }
  return acc;
}

template <class F>
std::vector<F> tree_expected_utility(const GameTree& t, const BehavioralProfile<F>& b) {
  return tree_expected_utility(t, b, t.root());
}

/// Behavioral strategy that plays one action per information set.
template <class F = Rational>
BehavioralStrategy<F> pure_behavioral(const GameTree& t, std::size_t player, std::size_t pure) {
  BehavioralStrategy<F> b;
  for (std::size_t k : t.player_infosets(player)) {
    std::vector<F> local(t.infoset(k).actions.size(), F(Rational(0)));
    local[t.strategy_action(pure, k)] = F(Rational(1));
    b.push_back(std::move(local));
  }
  return b;
}

}  // namespace kbeq

#endif  // KBEQ_GAMES_HPP
