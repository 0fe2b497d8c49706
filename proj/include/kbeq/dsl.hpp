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

// Text format for games, profiles, measures, trembles and formulas.
//
//   kbeq 1
//   game "pd" normal {
//     players: Row, Col;
//     strategies Row: C, D;
//     strategies Col: C, D;
//     payoff (C,C) = (3,3);
//     ...
//   }
//   game "entry" extensive {
//     players: A, B;
//     node a player A infoset I_A { down_A -> leaf(2,2); across_A -> b; }
//     node b player B infoset I_B { down_B -> leaf(3,1); across_B -> leaf(0,0); }
//     root a;
//   }
//   profile "p" for "pd" { Row: { C: 0, D: 1 }; Col: { D: 1 }; }
//   profile "q" for "entry" { I_A: { across_A: 1 }; I_B: { down_B: 1 }; }
//   measure "m" for "pd" { (C,C): 1/2; (D,D): 1/2; }
//   tremble "t" for "entry" { default: 1; (I_B, across_B): 2; }
//   formula "f" for "pd" { B[Row](do[Row](D)) }
//
// Whitespace is free and `#` starts a comment. Omitted probabilities are 0.

#ifndef KBEQ_DSL_HPP
#define KBEQ_DSL_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kbeq/epistemic.hpp"
#include "kbeq/literal.hpp"

namespace kbeq {

enum class DiagCode { kSyntax, kUnknownReference, kDuplicateName, kArity, kInvalid };

inline const char* to_string(DiagCode c) {
  switch (c) {
    case DiagCode::kSyntax: return "syntax";
    case DiagCode::kUnknownReference: return "unknown-reference";
    case DiagCode::kDuplicateName: return "duplicate-name";
    case DiagCode::kArity: return "arity";
    case DiagCode::kInvalid: return "invalid";
  }
  return "?";
}

struct Diagnostic {
  DiagCode code = DiagCode::kSyntax;
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based, in bytes
  std::string message;

  std::string to_string() const {
    return std::to_string(line) + ":" + std::to_string(column) + ": error[" + kbeq::to_string(code) +
           "]: " + message;
  }
};

struct SourceSpan {
  std::size_t line = 0, column = 0, end_line = 0, end_column = 0;
};

enum class ItemKind { kGame, kProfile, kMeasure, kTremble, kFormula };

inline const char* to_string(ItemKind k) {
  switch (k) {
    case ItemKind::kGame: return "game";
    case ItemKind::kProfile: return "profile";
    case ItemKind::kMeasure: return "measure";
    case ItemKind::kTremble: return "tremble";
    case ItemKind::kFormula: return "formula";
  }
  return "?";
}

struct GamePayload {
  std::variant<NormalFormGame, ExtensiveFormGame> game;
  /// Compiled tree for valid extensive games.
  std::shared_ptr<const GameTree> tree;

  bool is_extensive() const { return game.index() == 1; }
  const NormalFormGame& normal() const { return std::get<NormalFormGame>(game); }
  const ExtensiveFormGame& extensive() const { return std::get<ExtensiveFormGame>(game); }
  const std::vector<std::string>& players() const {
    return is_extensive() ? extensive().players() : normal().players();
  }
  friend bool operator==(const GamePayload& a, const GamePayload& b) { return a.game == b.game; }
};

struct ProfilePayload {
  std::string game;
  std::variant<MixedProfile<EpsNum>, BehavioralProfile<EpsNum>> value;
  friend bool operator==(const ProfilePayload&, const ProfilePayload&) = default;
};

struct MeasurePayload {
  std::string game;
  /// Over the (strategic form's) joint pure strategies in table order.
  std::vector<EpsNum> joint;
  friend bool operator==(const MeasurePayload&, const MeasurePayload&) = default;
};

struct TremblePayload {
  std::string game;
  TrembleSpec spec;
  friend bool operator==(const TremblePayload&, const TremblePayload&) = default;
};

struct FormulaPayload {
  std::string game;
  FormulaPtr formula;
  friend bool operator==(const FormulaPayload& a, const FormulaPayload& b) {
    return a.game == b.game && *a.formula == *b.formula;
  }
};

struct Item {
  ItemKind kind = ItemKind::kGame;
  std::string name;
  SourceSpan span;
  std::variant<GamePayload, ProfilePayload, MeasurePayload, TremblePayload, FormulaPayload> payload;

  /// Structural equality; spans are ignored.
  friend bool operator==(const Item& a, const Item& b) {
    return a.kind == b.kind && a.name == b.name && a.payload == b.payload;
  }
};

class Document {
 public:
  const std::vector<Item>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  void add(Item item) { items_.push_back(std::move(item)); }

  const Item* find(std::string_view name) const {
    for (const auto& it : items_)
      if (it.name == name) return &it;
    return nullptr;
  }
  const Item* find(std::string_view name, ItemKind kind) const {
    const Item* it = find(name);
    return it && it->kind == kind ? it : nullptr;
  }
  const GamePayload* game(std::string_view name) const {
    const Item* it = find(name, ItemKind::kGame);
    return it ? &std::get<GamePayload>(it->payload) : nullptr;
  }
  /// Names of items of a kind, in document order.
  std::vector<std::string> names(ItemKind kind) const {
    std::vector<std::string> out;
    for (const auto& it : items_)
      if (it.kind == kind) out.push_back(it.name);
    return out;
  }

  friend bool operator==(const Document&, const Document&) = default;

 private:
  std::vector<Item> items_;
};

struct ParseResult {
  Document document;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

namespace detail {

class DslParser {
 public:
  explicit DslParser(std::string_view text) : s_(text) {
    line_starts_.push_back(0);
    for (std::size_t k = 0; k < s_.size(); ++k)
      if (s_[k] == '\n') line_starts_.push_back(k + 1);
  }

  ParseResult run() {
    skip();
    if (eof()) return std::move(out_);
    std::size_t at = pos_;
    if (word() != "kbeq") {
      report(DiagCode::kSyntax, at, "missing format header 'kbeq 1'");
      pos_ = at;
    } else {
      skip();
      std::size_t vat = pos_;
      std::string v = digits();
      if (v != "1") report(DiagCode::kSyntax, vat, "unsupported format version '" + v + "'");
    }
    for (;;) {
      skip();
      if (eof()) break;
      std::size_t start = pos_;
      try {
        item();
      } catch (const Abort&) {
        recover(start);
      }
    }
    return std::move(out_);
  }

 private:
  struct Abort {};

  // Items ------------------------------------------------------------------

  void item() {
    std::size_t start = pos_;
    std::string kw = word();
    ItemKind kind;
    if (kw == "game") kind = ItemKind::kGame;
    else if (kw == "profile") kind = ItemKind::kProfile;
    else if (kw == "measure") kind = ItemKind::kMeasure;
    else if (kw == "tremble") kind = ItemKind::kTremble;
    else if (kw == "formula") kind = ItemKind::kFormula;
    else fail(DiagCode::kSyntax, start, kw.empty() ? "expected an item" : "unknown item kind '" + kw + "'");

    skip();
    std::size_t name_at = pos_;
    std::string name = quoted();
    bool dup = out_.document.find(name) != nullptr;
    if (dup) report(DiagCode::kDuplicateName, name_at, "duplicate item name \"" + name + "\"");

    Item it;
    it.kind = kind;
    it.name = name;
    std::size_t errors = out_.diagnostics.size();
    if (kind == ItemKind::kGame) {
      it.payload = game_body();
    } else {
      expect_word("for");
      skip();
      std::size_t ref_at = pos_;
      std::string gname = quoted();
      const GamePayload* g = out_.document.game(gname);
      if (!g) fail(DiagCode::kUnknownReference, ref_at, "unknown game \"" + gname + "\"");
      if (kind == ItemKind::kProfile) it.payload = profile_body(gname, *g);
      else if (kind == ItemKind::kMeasure) it.payload = measure_body(gname, *g);
      else if (kind == ItemKind::kTremble) it.payload = tremble_body(gname, *g);
      else it.payload = formula_body(gname, *g);
    }
    it.span = span(start, pos_);
    if (!dup && out_.diagnostics.size() == errors) out_.document.add(std::move(it));
  }

  GamePayload game_body() {
    skip();
    std::size_t at = pos_;
    std::string form = word();
    if (form == "normal") return normal_body();
    if (form == "extensive") return extensive_body();
    fail(DiagCode::kSyntax, at, "expected 'normal' or 'extensive'");
  }

  std::vector<std::string> players_stmt(std::vector<std::size_t>* where = nullptr) {
    expect_word("players");
    expect(':');
    std::vector<std::string> players;
    std::set<std::string> seen;
    do {
      skip();
      std::size_t at = pos_;
      std::string p = ident();
      if (!seen.insert(p).second) report(DiagCode::kDuplicateName, at, "duplicate player " + p);
      players.push_back(p);
      if (where) where->push_back(at);
    } while (accept(','));
    expect(';');
    return players;
  }

  GamePayload normal_body() {
    expect('{');
    std::size_t game_at = pos_;
    auto players = players_stmt();
    std::vector<std::vector<std::string>> strategies(players.size());
    std::vector<bool> declared(players.size(), false);
    struct Entry {
      std::size_t at;
      PureProfile profile;
      std::vector<Rational> payoff;
    };
    std::vector<Entry> entries;
    for (;;) {
      skip();
      if (accept('}')) break;
      std::size_t at = pos_;
      std::string kw = word();
      if (kw == "strategies") {
        skip();
        std::size_t pat = pos_;
        std::string p = ident();
        auto i = std::find(players.begin(), players.end(), p) - players.begin();
        expect(':');
        std::vector<std::string> names;
        std::set<std::string> seen;
        do {
          skip();
          std::size_t sat = pos_;
          std::string sname = ident();
          if (!seen.insert(sname).second) report(DiagCode::kDuplicateName, sat, "duplicate strategy " + sname);
          names.push_back(sname);
        } while (accept(','));
        expect(';');
        if (static_cast<std::size_t>(i) == players.size()) {
          report(DiagCode::kUnknownReference, pat, "unknown player " + p);
        } else if (declared[i]) {
          report(DiagCode::kDuplicateName, pat, "strategies of " + p + " declared twice");
        } else {
          declared[i] = true;
          strategies[i] = std::move(names);
        }
      } else if (kw == "payoff") {
        skip();
        std::size_t pat = pos_;
        auto names = name_tuple();
        expect('=');
        skip();
        std::size_t uat = pos_;
        auto u = number_tuple();
        Entry e{pat, {}, {}};
        bool ok = true;
        if (names.size() != players.size()) {
          report(DiagCode::kArity, pat, "profile has " + std::to_string(names.size()) +
                                            " strategies, expected " + std::to_string(players.size()));
          ok = false;
        } else {
          for (std::size_t i = 0; i < names.size(); ++i) {
            auto it = std::find(strategies[i].begin(), strategies[i].end(), names[i].first);
            if (it == strategies[i].end()) {
              report(DiagCode::kUnknownReference, names[i].second,
                     "unknown strategy " + names[i].first + " of " + players[i]);
              ok = false;
            } else {
              e.profile.push_back(it - strategies[i].begin());
            }
          }
        }
        if (u.size() != players.size()) {
          report(DiagCode::kArity, uat, "payoff has " + std::to_string(u.size()) + " entries, expected " +
                                            std::to_string(players.size()));
          ok = false;
        }
        for (const auto& [v, vat] : u) {
          if (!v.is_standard()) {
            report(DiagCode::kInvalid, vat, "payoffs must be standard numbers");
            ok = false;
          } else {
            e.payoff.push_back(v.to_rational());
          }
        }
        expect(';');
        if (ok) entries.push_back(std::move(e));
      } else {
        fail(DiagCode::kSyntax, at, "expected 'strategies', 'payoff' or '}'");
      }
    }
    for (std::size_t i = 0; i < players.size(); ++i)
      if (!declared[i]) report(DiagCode::kInvalid, game_at, "no strategies declared for " + players[i]);
    NormalFormGame g(players, strategies);
    if (std::all_of(declared.begin(), declared.end(), [](bool b) { return b; })) {
      std::set<std::size_t> seen;
      for (const auto& e : entries) {
        std::size_t k = g.profile_index(e.profile);
        if (!seen.insert(k).second) {
          report(DiagCode::kDuplicateName, e.at, "duplicate payoff for " + g.profile_name(e.profile));
          continue;
        }
        g.set_payoff(e.profile, e.payoff);
      }
      for (const auto& v : validate_game(g)) report(DiagCode::kInvalid, game_at, v.where + ": " + v.message);
    }
    return {std::move(g), nullptr};
  }

  GamePayload extensive_body() {
    expect('{');
    std::size_t game_at = pos_;
    auto players = players_stmt();
    ExtensiveFormGame g(players);
    std::map<std::string, std::size_t> node_at;
    std::vector<std::pair<std::string, std::size_t>> refs;  // child id, position
    std::size_t root_at = game_at;
    bool have_root = false;
    auto child = [&](const std::string& parent, const std::string& edge) -> std::string {
      skip();
      std::size_t at = pos_;
      std::string w = word();
      if (w == "leaf") {
        skip();
        std::size_t uat = pos_;
        auto u = number_tuple();
        std::vector<Rational> payoff;
        for (const auto& [v, vat] : u) {
          if (!v.is_standard()) report(DiagCode::kInvalid, vat, "payoffs must be standard numbers");
          else payoff.push_back(v.to_rational());
        }
        if (u.size() != players.size())
          report(DiagCode::kArity, uat, "leaf has " + std::to_string(u.size()) + " payoffs, expected " +
                                            std::to_string(players.size()));
        std::string id = parent + ":" + edge;
        pending_leaves_.emplace_back(id, std::move(payoff));
        return id;
      }
      if (w.empty()) fail(DiagCode::kSyntax, at, "expected a node id or leaf(...)");
      pos_ = at;
      std::string id = ident();
      refs.emplace_back(id, at);
      return id;
    };
    for (;;) {
      skip();
      if (accept('}')) break;
      std::size_t at = pos_;
      std::string kw = word();
      if (kw == "node") {
        skip();
        std::size_t id_at = pos_;
        std::string id = ident();
        expect_word("player");
        skip();
        std::size_t pat = pos_;
        std::string p = ident();
        auto pi = std::find(players.begin(), players.end(), p) - players.begin();
        if (static_cast<std::size_t>(pi) == players.size())
          report(DiagCode::kUnknownReference, pat, "unknown player " + p);
        expect_word("infoset");
        skip();
        std::string infoset = ident();
        expect('{');
        std::vector<std::pair<std::string, std::string>> moves;
        while (!accept('}')) {
          skip();
          std::string a = ident();
          expect_arrow();
          moves.emplace_back(a, child(id, a));
          expect(';');
        }
        declare(node_at, id, id_at);
        g.add_decision(id, static_cast<std::size_t>(pi), infoset, std::move(moves));
        flush_leaves(g);
      } else if (kw == "chance") {
        skip();
        std::size_t id_at = pos_;
        std::string id = ident();
        expect('{');
        std::vector<std::pair<std::string, Rational>> outcomes;
        while (!accept('}')) {
          skip();
          std::size_t pat = pos_;
          EpsNum p = number();
          if (!p.is_standard()) report(DiagCode::kInvalid, pat, "chance probabilities must be standard");
          expect_arrow();
          std::string c = child(id, std::to_string(outcomes.size()));
          outcomes.emplace_back(c, p.is_standard() ? p.to_rational() : Rational(0));
          expect(';');
        }
        declare(node_at, id, id_at);
        g.add_chance(id, std::move(outcomes));
        flush_leaves(g);
      } else if (kw == "root") {
        skip();
        root_at = pos_;
        if (have_root) report(DiagCode::kDuplicateName, root_at, "root declared twice");
        have_root = true;
        g.set_root(ident());
        refs.emplace_back(g.root(), root_at);
        expect(';');
      } else {
        fail(DiagCode::kSyntax, at, "expected 'node', 'chance', 'root' or '}'");
      }
    }
    std::size_t before = out_.diagnostics.size();
    for (const auto& [id, at] : refs)
      if (!node_at.count(id)) report(DiagCode::kUnknownReference, at, "unknown node " + id);
    if (!have_root) report(DiagCode::kInvalid, game_at, "no root declared");
    GamePayload out{g, nullptr};
    if (out_.diagnostics.size() == before) {
      for (const auto& v : validate_game(g)) {
        std::size_t at = game_at;
        if (v.where.rfind("node ", 0) == 0) {
          auto it = node_at.find(v.where.substr(5));
          if (it != node_at.end()) at = it->second;
        }
        report(DiagCode::kInvalid, at, v.where + ": " + v.message);
      }
      if (out_.diagnostics.size() == before) out.tree = std::make_shared<const GameTree>(g);
    }
    return out;
  }

  void declare(std::map<std::string, std::size_t>& node_at, const std::string& id, std::size_t at) {
    if (!node_at.emplace(id, at).second) report(DiagCode::kDuplicateName, at, "duplicate node " + id);
    for (const auto& [leaf, payoff] : pending_leaves_) node_at.emplace(leaf, at);
  }
  void flush_leaves(ExtensiveFormGame& g) {
    for (auto& [id, payoff] : pending_leaves_) g.add_leaf(id, std::move(payoff));
    pending_leaves_.clear();
  }

  ProfilePayload profile_body(const std::string& gname, const GamePayload& g) {
    expect('{');
    std::size_t body_at = pos_;
    ProfilePayload out{gname, {}};
    if (!g.is_extensive()) {
      const NormalFormGame& n = g.normal();
      MixedProfile<EpsNum> s(n.num_players());
      std::vector<bool> seen(n.num_players(), false);
      while (!accept('}')) {
        skip();
        std::size_t at = pos_;
        std::string p = ident();
        auto i = n.player_index(p);
        if (!i) report(DiagCode::kUnknownReference, at, "unknown player " + p);
        else if (seen[*i]) report(DiagCode::kDuplicateName, at, "player " + p + " listed twice");
        expect(':');
        auto dist = distribution(i ? &n.strategies(*i) : nullptr, "strategy");
        expect(';');
        if (i && !seen[*i]) {
          seen[*i] = true;
          s[*i] = std::move(dist);
        }
      }
      for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) report(DiagCode::kInvalid, body_at, "no strategy given for " + n.player_name(i));
      out.value = std::move(s);
      return out;
    }
    if (!g.tree) fail(DiagCode::kInvalid, body_at, "game \"" + gname + "\" is not valid");
    const GameTree& t = *g.tree;
    BehavioralProfile<EpsNum> b(t.num_players());
    for (std::size_t i = 0; i < t.num_players(); ++i) b[i].resize(t.player_infosets(i).size());
    std::vector<bool> seen(t.num_infosets(), false);
    while (!accept('}')) {
      skip();
      std::size_t at = pos_;
      std::string id = ident();
      auto k = t.infoset_index(id);
      if (!k) report(DiagCode::kUnknownReference, at, "unknown information set " + id);
      else if (seen[*k]) report(DiagCode::kDuplicateName, at, "information set " + id + " listed twice");
      expect(':');
      auto dist = distribution(k ? &t.infoset(*k).actions : nullptr, "action");
      expect(';');
      if (k && !seen[*k]) {
        seen[*k] = true;
        b[t.infoset(*k).player][t.local_infoset(*k)] = std::move(dist);
      }
    }
    for (std::size_t k = 0; k < seen.size(); ++k)
      if (!seen[k]) report(DiagCode::kInvalid, body_at, "no distribution given at " + t.infoset(k).id);
    out.value = std::move(b);
    return out;
  }

  /// `{ name: p, ... }` over `names`; omitted names get 0.
  std::vector<EpsNum> distribution(const std::vector<std::string>* names, const char* what) {
    skip();
    std::size_t open_at = pos_;
    expect('{');
    std::vector<EpsNum> out(names ? names->size() : 0, EpsNum(0));
    std::vector<bool> seen(out.size(), false);
    if (!accept('}')) {
      do {
        skip();
        std::size_t at = pos_;
        std::string key = ident();
        expect(':');
        skip();
        std::size_t vat = pos_;
        EpsNum v = number();
        if (!names) continue;
        auto it = std::find(names->begin(), names->end(), key);
        if (it == names->end()) {
          report(DiagCode::kUnknownReference, at, std::string("unknown ") + what + " " + key);
          continue;
        }
        std::size_t k = it - names->begin();
        if (seen[k]) report(DiagCode::kDuplicateName, at, key + " listed twice");
        if (v.sign() < 0) report(DiagCode::kInvalid, vat, "negative probability");
        seen[k] = true;
        out[k] = v;
      } while (accept(','));
      expect('}');
    }
    if (names) {
      EpsNum total(0);
      for (const auto& v : out) total += v;
      if (total != EpsNum(1))
        report(DiagCode::kInvalid, open_at, "probabilities sum to " + total.to_string() + ", not 1");
    }
    return out;
  }

  MeasurePayload measure_body(const std::string& gname, const GamePayload& g) {
    expect('{');
    std::size_t body_at = pos_;
    std::optional<NormalFormGame> sf;
    if (g.is_extensive()) {
      if (!g.tree) fail(DiagCode::kInvalid, body_at, "game \"" + gname + "\" is not valid");
      sf = strategic_form(*g.tree);
    }
    const NormalFormGame& n = sf ? *sf : g.normal();
    MeasurePayload out{gname, std::vector<EpsNum>(n.num_profiles(), EpsNum(0))};
    std::vector<bool> seen(n.num_profiles(), false);
    while (!accept('}')) {
      skip();
      std::size_t at = pos_;
      auto names = name_tuple();
      expect(':');
      skip();
      std::size_t vat = pos_;
      EpsNum v = number();
      expect(';');
      if (names.size() != n.num_players()) {
        report(DiagCode::kArity, at, "profile has " + std::to_string(names.size()) +
                                         " strategies, expected " + std::to_string(n.num_players()));
        continue;
      }
      PureProfile p;
      for (std::size_t i = 0; i < names.size(); ++i) {
        auto s = n.strategy_index(i, names[i].first);
        if (!s) report(DiagCode::kUnknownReference, names[i].second, "unknown strategy " + names[i].first);
        else p.push_back(*s);
      }
      if (p.size() != names.size()) continue;
      std::size_t k = n.profile_index(p);
      if (seen[k]) report(DiagCode::kDuplicateName, at, n.profile_name(p) + " listed twice");
      if (v.sign() < 0) report(DiagCode::kInvalid, vat, "negative probability");
      seen[k] = true;
      out.joint[k] = v;
    }
    EpsNum total(0);
    for (const auto& v : out.joint) total += v;
    if (total != EpsNum(1))
      report(DiagCode::kInvalid, body_at, "measure sums to " + total.to_string() + ", not 1");
    return out;
  }

  TremblePayload tremble_body(const std::string& gname, const GamePayload& g) {
    expect('{');
    std::size_t body_at = pos_;
    if (!g.is_extensive() || !g.tree)
      fail(DiagCode::kInvalid, body_at, "trembles need a valid extensive game");
    const GameTree& t = *g.tree;
    TremblePayload out{gname, {}};
    bool have_default = false;
    while (!accept('}')) {
      skip();
      std::size_t at = pos_;
      std::optional<std::pair<std::size_t, std::size_t>> key;
      if (peek() == '(') {
        auto names = name_tuple();
        if (names.size() != 2) {
          report(DiagCode::kArity, at, "expected (information set, action)");
        } else if (auto k = t.infoset_index(names[0].first); !k) {
          report(DiagCode::kUnknownReference, names[0].second, "unknown information set " + names[0].first);
        } else if (auto a = t.action_index(*k, names[1].first); !a) {
          report(DiagCode::kUnknownReference, names[1].second, "unknown action " + names[1].first);
        } else {
          key = std::make_pair(*k, *a);
        }
      } else {
        std::string w = word();
        if (w != "default") fail(DiagCode::kSyntax, at, "expected 'default' or (infoset, action)");
        if (have_default) report(DiagCode::kDuplicateName, at, "default listed twice");
        have_default = true;
      }
      expect(':');
      skip();
      std::size_t vat = pos_;
      EpsNum v = number();
      expect(';');
      if (!v.is_standard() || !v.to_rational().is_integer() || v.to_rational() < Rational(1) ||
          v.to_rational() > Rational(64)) {
        report(DiagCode::kInvalid, vat, "tremble exponents are integers from 1 to 64");
        continue;
      }
      auto e = static_cast<std::size_t>(v.to_rational().to_double());
      if (key) {
        if (out.spec.exponents.count(*key)) report(DiagCode::kDuplicateName, at, "entry listed twice");
        out.spec.exponents[*key] = e;
      } else {
        out.spec.default_exponent = e;
      }
    }
    return out;
  }

  FormulaPayload formula_body(const std::string& gname, const GamePayload& g) {
    expect('{');
    std::size_t start = pos_;
    int depth = 1;
    while (!eof() && depth > 0) {
      if (s_[pos_] == '{') ++depth;
      if (s_[pos_] == '}') --depth;
      if (depth > 0) ++pos_;
    }
    if (eof()) fail(DiagCode::kSyntax, start, "unterminated formula");
    std::string_view text = s_.substr(start, pos_ - start);
    ++pos_;
    FormulaPayload out{gname, nullptr};
    try {
      out.formula = parse_formula(text, g.players(), g.is_extensive());
    } catch (const FormulaSyntaxError& e) {
      std::string msg = e.what();
      DiagCode code = msg.rfind("unknown player", 0) == 0 ? DiagCode::kUnknownReference : DiagCode::kSyntax;
      fail(code, start + e.offset(), msg);
    }
    check_names(*out.formula, g, start);
    return out;
  }

  void check_names(const Formula& f, const GamePayload& g, std::size_t at) {
    using K = Formula::Kind;
    if (f.kind == K::kDoStrat || f.kind == K::kDoMove || f.kind == K::kCanMove) {
      bool ok = false;
      if (!g.is_extensive()) {
        ok = g.normal().strategy_index(f.player, f.name).has_value();
      } else if (f.name == "Skip") {
        ok = f.kind != K::kDoStrat;
      } else if (g.tree) {
        for (std::size_t k : g.tree->player_infosets(f.player))
          ok = ok || g.tree->action_index(k, f.name).has_value();
      }
      if (!ok) report(DiagCode::kUnknownReference, at, "unknown strategy or action " + f.name);
    }
    for (const auto& a : f.args) check_names(*a, g, at);
  }

  // Lexical helpers --------------------------------------------------------

  std::vector<std::pair<std::string, std::size_t>> name_tuple() {
    expect('(');
    std::vector<std::pair<std::string, std::size_t>> out;
    do {
      skip();
      std::size_t at = pos_;
      out.emplace_back(ident(), at);
    } while (accept(','));
    expect(')');
    return out;
  }

  std::vector<std::pair<EpsNum, std::size_t>> number_tuple() {
    expect('(');
    std::vector<std::pair<EpsNum, std::size_t>> out;
    do {
      skip();
      std::size_t at = pos_;
      out.emplace_back(number(), at);
    } while (accept(','));
    expect(')');
    return out;
  }

  EpsNum number() {
    skip();
    std::size_t at = pos_;
    try {
      return parse_number_prefix(s_, pos_);
    } catch (const LiteralError& e) {
      fail(DiagCode::kSyntax, e.offset() > at ? e.offset() : at, e.what());
    }
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
  }

  std::string word() {
    skip();
    std::size_t start = pos_;
    if (!ident_start(peek())) return {};
    while (ident_char(peek())) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  std::string ident() {
    skip();
    std::size_t at = pos_;
    std::string w = word();
    if (w.empty()) fail(DiagCode::kSyntax, at, "expected an identifier");
    return w;
  }
  std::string digits() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  std::string quoted() {
    skip();
    if (peek() != '"') fail(DiagCode::kSyntax, pos_, "expected a quoted name");
    std::size_t start = ++pos_;
    while (!eof() && peek() != '"' && peek() != '\n') ++pos_;
    if (peek() != '"') fail(DiagCode::kSyntax, start - 1, "unterminated string");
    std::string out(s_.substr(start, pos_ - start));
    ++pos_;
    return out;
  }
  void expect_word(std::string_view w) {
    skip();
    std::size_t at = pos_;
    if (word() != w) fail(DiagCode::kSyntax, at, "expected '" + std::string(w) + "'");
  }
  void expect_arrow() {
    skip();
    if (s_.substr(pos_, 2) != "->") fail(DiagCode::kSyntax, pos_, "expected '->'");
    pos_ += 2;
  }
  void expect(char c) {
    skip();
    if (peek() != c) {
      std::string got = eof() ? "end of input" : std::string("'") + peek() + "'";
      fail(DiagCode::kSyntax, pos_, std::string("expected '") + c + "', found " + got);
    }
    ++pos_;
  }
  bool accept(char c) {
    skip();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  bool eof() const { return pos_ >= s_.size(); }
  void skip() {
    while (!eof()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == '#') {
        while (!eof() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  /// Skips the rest of a broken item: through the brace that closes the
  /// item's first '{', or to the end of the line if it has none.
  void recover(std::size_t start) {
    std::size_t k = start;
    int depth = 0;
    bool opened = false;
    for (; k < s_.size(); ++k) {
      char c = s_[k];
      if (c == '#') {
        while (k < s_.size() && s_[k] != '\n') ++k;
        continue;
      }
      if (c == '"') {
        ++k;
        while (k < s_.size() && s_[k] != '"' && s_[k] != '\n') ++k;
        continue;
      }
      if (c == '\n' && !opened && k >= pos_) break;
      if (c == '{') {
        ++depth;
        opened = true;
      } else if (c == '}' && opened && --depth == 0) {
        ++k;
        break;
      }
    }
    pos_ = std::max(k, pos_ + (pos_ == start ? 1 : 0));
    if (pos_ > s_.size()) pos_ = s_.size();
  }

  std::pair<std::size_t, std::size_t> line_col(std::size_t at) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), at);
    std::size_t line = it - line_starts_.begin();
    return {line, at - line_starts_[line - 1] + 1};
  }
  SourceSpan span(std::size_t a, std::size_t b) const {
    auto [l1, c1] = line_col(a);
    auto [l2, c2] = line_col(b);
    return {l1, c1, l2, c2};
  }
  void report(DiagCode code, std::size_t at, std::string msg) {
    auto [line, col] = line_col(std::min(at, s_.size()));
    out_.diagnostics.push_back({code, line, col, std::move(msg)});
  }
  [[noreturn]] void fail(DiagCode code, std::size_t at, std::string msg) {
    report(code, at, std::move(msg));
    throw Abort{};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> line_starts_;
  std::vector<std::pair<std::string, std::vector<Rational>>> pending_leaves_;
  ParseResult out_;
};

}  // namespace detail

/// Parses a document. Items with errors are left out of the document and
/// reported in the diagnostics.
inline ParseResult parse_document(std::string_view text) { return detail::DslParser(text).run(); }

// Rendering ----------------------------------------------------------------

namespace detail {

inline std::string render_number(const EpsNum& v) { return v.to_string(); }

inline std::string render_tuple(const std::vector<Rational>& u) {
  std::string s = "(";
  for (std::size_t k = 0; k < u.size(); ++k) s += (k ? ", " : "") + u[k].to_string();
  return s + ")";
}

inline std::string render_distribution(const std::vector<std::string>& names, const std::vector<EpsNum>& p) {
  std::string s = "{ ";
  for (std::size_t k = 0; k < names.size(); ++k) s += (k ? ", " : "") + names[k] + ": " + render_number(p[k]);
  return s + " }";
}

inline void render_game(const GamePayload& g, std::string& out) {
  const auto& players = g.players();
  out += "  players: ";
  for (std::size_t i = 0; i < players.size(); ++i) out += (i ? ", " : "") + players[i];
  out += ";\n";
  if (!g.is_extensive()) {
    const NormalFormGame& n = g.normal();
    for (std::size_t i = 0; i < n.num_players(); ++i) {
      out += "  strategies " + n.player_name(i) + ": ";
      for (std::size_t s = 0; s < n.num_strategies(i); ++s) out += (s ? ", " : "") + n.strategies(i)[s];
      out += ";\n";
    }
    for (std::size_t k = 0; k < n.num_profiles(); ++k) {
      PureProfile p = n.profile_at(k);
      std::string name = "(";
      for (std::size_t i = 0; i < p.size(); ++i) name += (i ? ", " : "") + n.strategies(i)[p[i]];
      out += "  payoff " + name + ") = " + render_tuple(n.payoff(k)) + ";\n";
    }
    return;
  }
  const ExtensiveFormGame& e = g.extensive();
  std::map<std::string, const LeafDecl*> leaves;
  for (const auto& [id, node] : e.nodes())
    if (const auto* l = std::get_if<LeafDecl>(&node)) leaves[id] = l;
  auto child = [&](const std::string& id) {
    auto it = leaves.find(id);
    return it == leaves.end() ? id : "leaf" + render_tuple(it->second->payoff);
  };
  for (const auto& [id, node] : e.nodes()) {
    if (const auto* d = std::get_if<DecisionDecl>(&node)) {
      out += "  node " + id + " player " + players[d->player] + " infoset " + d->infoset + " {\n";
      for (const auto& [a, c] : d->moves) out += "    " + a + " -> " + child(c) + ";\n";
      out += "  }\n";
    } else if (const auto* c = std::get_if<ChanceDecl>(&node)) {
      out += "  chance " + id + " {\n";
      for (const auto& [to, p] : c->outcomes) out += "    " + p.to_string() + " -> " + child(to) + ";\n";
      out += "  }\n";
    }
  }
  out += "  root " + e.root() + ";\n";
}

}  // namespace detail

/// Canonical text of a valid document.
inline std::string render(const Document& doc) {
  std::string out = "kbeq 1\n";
  for (const Item& it : doc.items()) {
    out += "\n";
    out += std::string(to_string(it.kind)) + " \"" + it.name + "\"";
    switch (it.kind) {
      case ItemKind::kGame: {
        const auto& g = std::get<GamePayload>(it.payload);
        out += g.is_extensive() ? " extensive {\n" : " normal {\n";
        detail::render_game(g, out);
        break;
      }
      case ItemKind::kProfile: {
        const auto& p = std::get<ProfilePayload>(it.payload);
        const GamePayload& g = *doc.game(p.game);
        out += " for \"" + p.game + "\" {\n";
        if (const auto* m = std::get_if<MixedProfile<EpsNum>>(&p.value)) {
          const NormalFormGame& n = g.normal();
          for (std::size_t i = 0; i < n.num_players(); ++i)
            out += "  " + n.player_name(i) + ": " + detail::render_distribution(n.strategies(i), (*m)[i]) + ";\n";
        } else {
          const auto& b = std::get<BehavioralProfile<EpsNum>>(p.value);
          const GameTree& t = *g.tree;
          for (std::size_t k = 0; k < t.num_infosets(); ++k) {
            const InfoSet& is = t.infoset(k);
            out += "  " + is.id + ": " +
                   detail::render_distribution(is.actions, b[is.player][t.local_infoset(k)]) + ";\n";
          }
        }
        break;
      }
      case ItemKind::kMeasure: {
        const auto& m = std::get<MeasurePayload>(it.payload);
        const GamePayload& g = *doc.game(m.game);
        NormalFormGame n = g.is_extensive() ? strategic_form(*g.tree) : g.normal();
        out += " for \"" + m.game + "\" {\n";
        for (std::size_t k = 0; k < n.num_profiles(); ++k) {
          if (m.joint[k].is_zero()) continue;
          PureProfile p = n.profile_at(k);
          std::string name = "(";
          for (std::size_t i = 0; i < p.size(); ++i) name += (i ? ", " : "") + n.strategies(i)[p[i]];
          out += "  " + name + "): " + detail::render_number(m.joint[k]) + ";\n";
        }
        break;
      }
      case ItemKind::kTremble: {
        const auto& tr = std::get<TremblePayload>(it.payload);
        const GameTree& t = *doc.game(tr.game)->tree;
        out += " for \"" + tr.game + "\" {\n";
        out += "  default: " + std::to_string(tr.spec.default_exponent) + ";\n";
        for (const auto& [key, e] : tr.spec.exponents)
          out += "  (" + t.infoset(key.first).id + ", " + t.infoset(key.first).actions[key.second] +
                 "): " + std::to_string(e) + ";\n";
        break;
      }
      case ItemKind::kFormula: {
        const auto& f = std::get<FormulaPayload>(it.payload);
        out += " for \"" + f.game + "\" {\n  " + to_string(*f.formula, doc.game(f.game)->players()) + "\n";
        break;
      }
    }
    out += "}\n";
  }
  return out;
}

// Resolution helpers -------------------------------------------------------

/// Standard value of a parsed number, or an error naming `what`.
inline Rational require_standard(const EpsNum& v, const std::string& what) {
  if (!v.is_standard()) throw Error(what + " must be a standard number");
  return v.to_rational();
}

inline MixedProfile<Rational> standard_mixed(const MixedProfile<EpsNum>& s) {
  MixedProfile<Rational> out;
  for (const auto& row : s) {
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(require_standard(v, "profile probability"));
    out.push_back(std::move(r));
  }
  return out;
}

inline BehavioralProfile<Rational> standard_behavioral(const BehavioralProfile<EpsNum>& b) {
  BehavioralProfile<Rational> out;
  for (const auto& player : b) {
    BehavioralStrategy<Rational> bs;
    for (const auto& row : player) {
      std::vector<Rational> r;
      for (const auto& v : row) r.push_back(require_standard(v, "profile probability"));
      bs.push_back(std::move(r));
    }
    out.push_back(std::move(bs));
  }
  return out;
}

}  // namespace kbeq

#endif  // KBEQ_DSL_HPP
