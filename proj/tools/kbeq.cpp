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

// kbeq command-line front end.
//
// Exit codes: 0 verified/true, 1 refuted/false, 2 input error. With
// `--format json` every command prints one object with `verdict`,
// `witness` and `values`; numbers are printed as exact strings.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kbeq/kbeq.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace kbeq;

/// Bad input: unreadable file, invalid document, unknown item, bad flag.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Result {
  std::string verdict;
  Json witness = nullptr;
  Json values = Json::object();
  int exit_code = 0;
};

struct Options {
  std::string file;
  std::string format = "table";
  std::string game;
  std::string profile;
  std::string measure;
  std::string tremble;
  std::string prior;
  std::string program;
  std::string scope = "own";
  std::string mode;
  std::string formula;
  std::string formula_item;
  std::string at;
  std::string strategy;
  bool independent = false;
};

// Loading ------------------------------------------------------------------

ParseResult read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

Document load(const std::string& path) {
  ParseResult r = read_document(path);
  if (!r.ok()) {
    std::string msg = path + " has errors:";
    for (const auto& d : r.diagnostics) msg += "\n  " + d.to_string();
    throw InputError(msg);
  }
  return std::move(r.document);
}

const Item& item(const Document& doc, const std::string& name, ItemKind kind) {
  const Item* it = doc.find(name, kind);
  if (!it) throw InputError(std::string("no ") + to_string(kind) + " named \"" + name + "\"");
  return *it;
}

std::string item_game(const Item& it) {
  return std::visit(
      [&](const auto& p) -> std::string {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, GamePayload>) return it.name;
        else return p.game;
      },
      it.payload);
}

/// The game named by --game, else the game of the first referenced item,
/// else the document's first game.
const GamePayload& select_game(const Document& doc, const Options& o) {
  std::string name = o.game;
  for (const std::string* ref : {&o.profile, &o.measure, &o.prior, &o.formula_item, &o.tremble}) {
    if (!name.empty()) break;
    if (ref->empty()) continue;
    if (const Item* it = doc.find(*ref)) name = item_game(*it);
    else throw InputError("no item named \"" + *ref + "\"");
  }
  if (name.empty()) {
    auto games = doc.names(ItemKind::kGame);
    if (games.empty()) throw InputError("document has no game");
    name = games.front();
  }
  const GamePayload* g = doc.game(name);
  if (!g) throw InputError("no game named \"" + name + "\"");
  return *g;
}

void require_same_game(const Item& it, const GamePayload& g, const Document& doc) {
  if (doc.game(item_game(it)) != &g)
    throw InputError(std::string(to_string(it.kind)) + " \"" + it.name + "\" belongs to game \"" +
                     item_game(it) + "\"");
}

NormalFormGame normal_of(const GamePayload& g) {
  return g.is_extensive() ? strategic_form(*g.tree) : g.normal();
}

MixedProfile<Rational> mixed_of(const Document& doc, const GamePayload& g, const std::string& name) {
  const Item& it = item(doc, name, ItemKind::kProfile);
  require_same_game(it, g, doc);
  const auto& p = std::get<ProfilePayload>(it.payload);
  if (const auto* m = std::get_if<MixedProfile<EpsNum>>(&p.value)) return standard_mixed(*m);
  return behavioral_to_mixed(*g.tree, standard_behavioral(std::get<BehavioralProfile<EpsNum>>(p.value)));
}

BehavioralProfile<Rational> behavioral_of(const Document& doc, const GamePayload& g, const std::string& name) {
  const Item& it = item(doc, name, ItemKind::kProfile);
  require_same_game(it, g, doc);
  const auto& p = std::get<ProfilePayload>(it.payload);
  const auto* b = std::get_if<BehavioralProfile<EpsNum>>(&p.value);
  if (!b) throw InputError("profile \"" + name + "\" is not behavioral");
  return standard_behavioral(*b);
}

TrembleSpec tremble_of(const Document& doc, const GamePayload& g, const std::string& name) {
  if (name.empty()) return {};
  const Item& it = item(doc, name, ItemKind::kTremble);
  require_same_game(it, g, doc);
  return std::get<TremblePayload>(it.payload).spec;
}

/// Common prior over the game's joint pure strategies from --prior (a
/// measure or a profile), with optional trembles for behavioral profiles.
std::vector<EpsNum> prior_of(const Document& doc, const GamePayload& g, const Options& o) {
  if (o.prior.empty()) throw InputError("--prior is required");
  const Item* it = doc.find(o.prior);
  if (!it) throw InputError("no item named \"" + o.prior + "\"");
  require_same_game(*it, g, doc);
  if (it->kind == ItemKind::kMeasure) {
    if (!o.tremble.empty()) throw InputError("--tremble applies to profiles only");
    return std::get<MeasurePayload>(it->payload).joint;
  }
  if (it->kind != ItemKind::kProfile) throw InputError("--prior must name a measure or a profile");
  const auto& p = std::get<ProfilePayload>(it->payload);
  if (const auto* m = std::get_if<MixedProfile<EpsNum>>(&p.value)) {
    if (!o.tremble.empty()) throw InputError("--tremble applies to behavioral profiles only");
    return prior_from_mixed(g.normal(), *m);
  }
  const auto& b = std::get<BehavioralProfile<EpsNum>>(p.value);
  if (!o.tremble.empty()) return tremble_prior(*g.tree, standard_behavioral(b), tremble_of(doc, g, o.tremble));
  return prior_from_mixed(strategic_form(*g.tree), behavioral_to_mixed(*g.tree, b));
}

Scope scope_of(const std::string& s) {
  if (s == "own") return Scope::kOwnTypeStandard;
  if (s == "all") return Scope::kPositiveMass;
  if (s == "std") return Scope::kPositiveStandardMass;
  throw InputError("unknown scope " + s);
}

EuMode mode_of(const std::string& s, EuMode fallback) {
  if (s.empty()) return fallback;
  if (s == "exact") return EuMode::kExact;
  if (s == "standard") return EuMode::kStandardPart;
  throw InputError("unknown mode " + s);
}

// JSON helpers -------------------------------------------------------------

Json per_player(const NormalFormGame& g, const std::vector<Rational>& v) {
  Json out = Json::object();
  for (std::size_t i = 0; i < v.size(); ++i) out[g.player_name(i)] = v[i].to_string();
  return out;
}

Json mixed_json(const NormalFormGame& g, const MixedProfile<Rational>& s) {
  Json out = Json::object();
  for (std::size_t i = 0; i < s.size(); ++i) {
    Json row = Json::object();
    for (std::size_t a = 0; a < s[i].size(); ++a)
      if (!s[i][a].is_zero()) row[g.strategies(i)[a]] = s[i][a].to_string();
    out[g.player_name(i)] = row;
  }
  return out;
}

Json witness_json(const Witness& w) {
  Json out = Json::object();
  out["player"] = w.player_name;
  out["local_state"] = w.local_state;
  out["run"] = w.point.run;
  out["time"] = w.point.time;
  out["prescribed"] = w.prescribed;
  out["actual"] = w.actual;
  out["factual_eu"] = w.factual_eu ? Json(w.factual_eu->to_string()) : Json(nullptr);
  out["deviation"] = w.deviation.empty() ? Json(nullptr) : Json(w.deviation);
  out["deviation_eu"] = w.deviation_eu ? Json(w.deviation_eu->to_string()) : Json(nullptr);
  out["gap"] = w.gap ? Json(w.gap->to_string()) : Json(nullptr);
  return out;
}

// Commands -----------------------------------------------------------------

Result cmd_validate(const Options& o) {
  ParseResult r = read_document(o.file);
  Result out;
  out.verdict = r.ok() ? "valid" : "invalid";
  out.exit_code = r.ok() ? 0 : 1;
  Json items = Json::array();
  for (const auto& it : r.document.items())
    items.push_back(std::string(to_string(it.kind)) + " " + it.name);
  out.values["items"] = items;
  if (!r.ok()) {
    Json diags = Json::array();
    for (const auto& d : r.diagnostics) {
      Json j = Json::object();
      j["line"] = d.line;
      j["column"] = d.column;
      j["code"] = to_string(d.code);
      j["message"] = d.message;
      diags.push_back(j);
    }
    out.witness = Json::object();
    out.witness["diagnostics"] = diags;
  }
  return out;
}

Result cmd_info(const Options& o) {
  Document doc = load(o.file);
  const GamePayload& g = select_game(doc, o);
  Result out;
  out.verdict = "ok";
  NormalFormGame sf = normal_of(g);
  out.values["form"] = g.is_extensive() ? "extensive" : "normal";
  Json players = Json::array();
  for (std::size_t i = 0; i < sf.num_players(); ++i) {
    Json p = Json::object();
    p["name"] = sf.player_name(i);
    p["pure_strategies"] = sf.num_strategies(i);
    if (g.is_extensive()) {
      p["information_sets"] = g.tree->player_infosets(i).size();
      p["perfect_recall"] = static_cast<bool>(has_perfect_recall(*g.tree)[i]);
    }
    players.push_back(p);
  }
  out.values["players"] = players;
  out.values["strategic_form_profiles"] = sf.num_profiles();
  if (g.is_extensive()) out.values["nodes"] = g.tree->num_nodes();
  return out;
}

Result cmd_nash_verify(const Options& o) {
  Document doc = load(o.file);
  const GamePayload& g = select_game(doc, o);
  if (o.profile.empty()) throw InputError("--profile is required");
  NormalFormGame sf = normal_of(g);
  auto s = mixed_of(doc, g, o.profile);
  bool direct = is_nash(sf, s);
  Verdict kb = nash_via_kb(sf, s);
  Result out;
  out.verdict = direct ? "verified" : "refuted";
  out.exit_code = direct ? 0 : 1;
  out.values["expected_utility"] = per_player(sf, expected_utility(sf, s));
  out.values["kb_implements"] = kb.implements;
  if (kb.witness) out.witness = witness_json(*kb.witness);
  return out;
}

Result cmd_nash_enumerate(const Options& o) {
  Document doc = load(o.file);
  const GamePayload& g = select_game(doc, o);
  NormalFormGame sf = normal_of(g);
  if (sf.num_players() != 2) throw InputError("enumeration needs a two-player game");
  auto e = enumerate_nash_2p(sf);
  Result out;
  out.verdict = "enumerated";
  Json list = Json::array();
  for (const auto& s : e.equilibria) {
    Json j = Json::object();
    j["profile"] = mixed_json(sf, s);
    j["expected_utility"] = per_player(sf, expected_utility(sf, s));
    list.push_back(j);
  }
  out.values["count"] = e.equilibria.size();
  out.values["degenerate"] = e.degenerate;
  out.values["equilibria"] = list;
  return out;
}

Result cmd_correlated_verify(const Options& o) {
  Document doc = load(o.file);
  const GamePayload& g = select_game(doc, o);
  if (o.measure.empty()) throw InputError("--measure is required");
  const Item& it = item(doc, o.measure, ItemKind::kMeasure);
  require_same_game(it, g, doc);
  NormalFormGame sf = normal_of(g);
  CorrelatedDistribution d;
  for (const auto& v : std::get<MeasurePayload>(it.payload).joint) d.push_back(require_standard(v, "measure"));
  bool direct = is_correlated(sf, d);
  Verdict kb = correlated_via_kb(sf, d);
  Result out;
  out.verdict = direct ? "verified" : "refuted";
  out.exit_code = direct ? 0 : 1;
  out.values["expected_utility"] = per_player(sf, distribution_value(sf, d));
  out.values["kb_implements"] = kb.implements;
  if (kb.witness) out.witness = witness_json(*kb.witness);
  return out;
}

Result cmd_rationalizable(const Options& o) {
  Document doc = load(o.file);
  const GamePayload& g = select_game(doc, o);
  NormalFormGame sf = normal_of(g);
  auto z = rationalizable_set(sf, o.independent ? Beliefs::kIndependent : Beliefs::kCorrelated);
  Result out;
  out.verdict = "ok";
  out.values["beliefs"] = o.independent ? "independent" : "correlated";
  Json sets = Json::object();
  for (std::size_t i = 0; i < z.size(); ++i) {
    Json names = Json::array();
    for (std::size_t s : z[i]) names.push_back(sf.strategies(i)[s]);
    sets[sf.player_name(i)] = names;
  }
  out.values["surviving"] = sets;
  if (!o.strategy.empty()) {
    auto colon = o.strategy.find(':');
    if (colon == std::string::npos) throw InputError("--strategy expects PLAYER:STRATEGY");
    auto i = sf.player_index(o.strategy.substr(0, colon));
    if (!i) throw InputError("unknown player in --strategy");
    auto s = sf.strategy_index(*i, o.strategy.substr(colon + 1));
    if (!s) throw InputError("unknown strategy in --strategy");
    bool alive = std::find(z[*i].begin(), z[*i].end(), *s) != z[*i].end();
    out.verdict = alive ? "rationalizable" : "eliminated";
    out.exit_code = alive ? 0 : 1;
    if (!o.independent) {
      auto ctx = rationalizable_via_kb(sf, *i, *s);
      out.values["kb_witness_states"] = ctx ? Json(ctx->initial_states().size()) : Json(nullptr);
    }
  }
  return out;
}

Result cmd_tremble_check(const Options& o, bool perfect) {
  Document doc = load(o.file);
  const GamePayload& g = select_game(doc, o);
  if (!g.is_extensive()) throw InputError("this check needs an extensive game");
  if (o.profile.empty()) throw InputError("--profile is required");
  auto b = behavioral_of(doc, g, o.profile);
  auto spec = tremble_of(doc, g, o.tremble);
  EquilibriumCheck c = perfect ? check_perfect(g.extensive(), b, spec) : check_sequential(g.extensive(), b, spec);
  Result out;
  switch (c.status) {
    case EquilibriumStatus::kVerified: out.verdict = "verified"; break;
    case EquilibriumStatus::kRefuted: out.verdict = "refuted"; break;
    case EquilibriumStatus::kNotVerified: out.verdict = "not_verified"; break;
  }
  out.exit_code = c.ok() ? 0 : 1;
  if (c.verdict.witness) {
    out.witness = witness_json(*c.verdict.witness);
    const auto& ls = c.verdict.witness->local_state;
    for (std::size_t k = 0; k < g.tree->num_infosets(); ++k)
      if (ls.find(", " + g.tree->infoset(k).id + ")") != std::string::npos)
        out.witness["information_set"] = g.tree->infoset(k).id;
  }
  if (c.oracle) {
    Json j = Json::object();
    j["player"] = g.tree->player_name(c.oracle->player);
    j["information_set"] = c.oracle->infoset;
    j["action"] = c.oracle->action;
    j["action_value"] = c.oracle->action_value.to_string();
    j["better"] = c.oracle->better;
    j["better_value"] = c.oracle->better_value.to_string();
    out.values["one_shot_deviation"] = j;
  }
  if (c.beliefs) {
    Json beliefs = Json::object();
    for (const auto& [is, dist] : *c.beliefs) {
      Json d = Json::object();
      for (const auto& [node, p] : dist) d[node] = p.to_string();
      beliefs[is] = d;
    }
    out.values["beliefs"] = beliefs;
  }
  return out;
}

struct BuiltContext {
  Context<EpsNum> ctx;
  bool extensive;
};

BuiltContext context_of(const Document& doc, const GamePayload& g, const Options& o, bool extensive) {
  auto joint = prior_of(doc, g, o);
  if (extensive) {
    if (!g.is_extensive()) throw InputError("extensive program on a normal-form game");
    return {Context<EpsNum>::extensive_common(g.tree, joint), true};
  }
  return {Context<EpsNum>::normal_form_common(normal_of(g), joint), false};
}

Result cmd_kb_check(const Options& o) {
  Document doc = load(o.file);
  const GamePayload& g = select_game(doc, o);
  if (o.program != "eqnf" && o.program != "eqef") throw InputError("--program must be eqnf or eqef");
  bool ef = o.program == "eqef";
  auto built = context_of(doc, g, o, ef);
  KbProgram prog = ef ? eqef(*g.tree) : eqnf(built.ctx.form());
  Verdict v = implements(standard_protocol(built.ctx), prog, built.ctx, scope_of(o.scope),
                         mode_of(o.mode, EuMode::kExact));
  Result out;
  out.verdict = v.implements ? "implements" : "fails";
  out.exit_code = v.implements ? 0 : 1;
  out.values["program"] = o.program;
  out.values["clauses"] = prog.size();
  out.values["scope"] = o.scope;
  if (v.witness) out.witness = witness_json(*v.witness);
  return out;
}

Result cmd_eval(const Options& o) {
  Document doc = load(o.file);
  const GamePayload& g = select_game(doc, o);
  auto built = context_of(doc, g, o, g.is_extensive());
  FormulaPtr f;
  if (!o.formula_item.empty()) {
    const Item& it = item(doc, o.formula_item, ItemKind::kFormula);
    require_same_game(it, g, doc);
    f = std::get<FormulaPayload>(it.payload).formula;
  } else if (!o.formula.empty()) {
    try {
      f = parse_formula(o.formula, g.players(), g.is_extensive());
    } catch (const FormulaSyntaxError& e) {
      throw InputError(std::string("formula: ") + e.what());
    }
  } else {
    throw InputError("--formula or --formula-item is required");
  }
  auto comma = o.at.find(',');
  if (comma == std::string::npos) throw InputError("--at expects RUN,TIME");
  Point pt;
  try {
    pt.run = std::stoul(o.at.substr(0, comma));
    pt.time = std::stoul(o.at.substr(comma + 1));
  } catch (const std::exception&) {
    throw InputError("--at expects RUN,TIME");
  }
  auto sys = complete_system(built.ctx);
  if (pt.run >= sys.runs().size() || pt.time >= sys.num_times(pt.run))
    throw InputError("point out of range: the complete system has " + std::to_string(sys.runs().size()) + " runs");
  bool v = holds(sys, pt, *f, mode_of(o.mode, EuMode::kExact));
  Result out;
  out.verdict = v ? "true" : "false";
  out.exit_code = v ? 0 : 1;
  const NormalFormGame& sf = built.ctx.form();
  out.values["formula"] = to_string(*f, g.players());
  out.values["initial_state"] = sf.profile_name(sys.types(pt.run));
  out.values["played"] = sf.profile_name(sys.played(pt.run));
  out.values["time"] = pt.time;
  Json ls = Json::object();
  for (std::size_t i = 0; i < sf.num_players(); ++i)
    ls[sf.player_name(i)] = sys.describe_local_state(i, sys.local_state(pt, i));
  out.values["local_states"] = ls;
  return out;
}

// Output -------------------------------------------------------------------

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    bool scalars = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
    if (scalars) {
      std::string s = j.empty() ? "none" : "";
      for (std::size_t k = 0; k < j.size(); ++k) s += (k ? ", " : "") + (j[k].is_string() ? j[k].get<std::string>() : j[k].dump());
      out.emplace_back(prefix, s);
    } else {
      for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "[" + std::to_string(k) + "]", out);
    }
  } else {
    out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

void print(const Result& r, const std::string& format, bool color) {
  if (format == "json") {
    Json j = Json::object();
    j["verdict"] = r.verdict;
    j["witness"] = r.witness;
    j["values"] = r.values;
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::string verdict = r.verdict;
  if (color) verdict = (r.exit_code == 0 ? "\033[32m" : "\033[31m") + verdict + "\033[0m";
  std::cout << "verdict: " << verdict << "\n";
  for (const auto& [title, j] : {std::pair<const char*, const Json*>{"witness", &r.witness}, {"values", &r.values}}) {
    if (j->is_null() || j->empty()) continue;
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(*j, "", rows);
    std::cout << title << ":\n";
    for (const auto& [k, v] : rows) std::cout << "  " << k << ": " << v << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge-based equilibrium checker"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c) {
    c->add_option("file", o.file, "Input document")->required();
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "json"}));
    c->add_option("--game", o.game, "Game item name");
  };

  auto* validate = app.add_subcommand("validate", "Parse a document and report diagnostics");
  common(validate);
  auto* info = app.add_subcommand("info", "Describe a game");
  common(info);

  auto* nash = app.add_subcommand("nash", "Nash equilibria");
  nash->require_subcommand(1);
  auto* nash_verify = nash->add_subcommand("verify", "Check a mixed or behavioral profile");
  common(nash_verify);
  nash_verify->add_option("--profile", o.profile, "Profile item name");
  auto* nash_enum = nash->add_subcommand("enumerate", "All equilibria of a two-player game");
  common(nash_enum);

  auto* corr = app.add_subcommand("correlated", "Correlated equilibria");
  corr->require_subcommand(1);
  auto* corr_verify = corr->add_subcommand("verify", "Check a measure over joint strategies");
  common(corr_verify);
  corr_verify->add_option("--measure", o.measure, "Measure item name");

  auto* rat = app.add_subcommand("rationalizable", "Iterated elimination of never-best responses");
  common(rat);
  rat->add_flag("--independent", o.independent, "Opponents' choices are independent");
  rat->add_option("--strategy", o.strategy, "PLAYER:STRATEGY to test");

  CLI::App* tremble_cmds[2];
  const char* tremble_names[2] = {"sequential", "perfect"};
  for (int k = 0; k < 2; ++k) {
    auto* c = app.add_subcommand(tremble_names[k], k ? "Perfect equilibria" : "Sequential equilibria");
    c->require_subcommand(1);
    tremble_cmds[k] = c->add_subcommand("verify", "Check a behavioral profile under trembles");
    common(tremble_cmds[k]);
    tremble_cmds[k]->add_option("--profile", o.profile, "Behavioral profile item name");
    tremble_cmds[k]->add_option("--tremble", o.tremble, "Tremble item name");
  }

  auto* kb = app.add_subcommand("kb", "Knowledge-based programs");
  kb->require_subcommand(1);
  auto* kb_check = kb->add_subcommand("check", "Does the standard protocol implement a program?");
  common(kb_check);
  kb_check->add_option("--program", o.program, "eqnf or eqef")->required();
  kb_check->add_option("--prior", o.prior, "Measure or profile item name")->required();
  kb_check->add_option("--tremble", o.tremble, "Tremble item name");
  kb_check->add_option("--scope", o.scope, "own, all or std")->check(CLI::IsMember({"own", "all", "std"}));
  kb_check->add_option("--mode", o.mode, "exact or standard")->check(CLI::IsMember({"exact", "standard"}));

  auto* eval = app.add_subcommand("eval", "Evaluate a formula at a point of the complete system");
  common(eval);
  eval->add_option("--formula", o.formula, "Formula text");
  eval->add_option("--formula-item", o.formula_item, "Formula item name");
  eval->add_option("--at", o.at, "RUN,TIME")->required();
  eval->add_option("--prior", o.prior, "Measure or profile item name")->required();
  eval->add_option("--tremble", o.tremble, "Tremble item name");
  eval->add_option("--mode", o.mode, "exact or standard")->check(CLI::IsMember({"exact", "standard"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    bool json = false;
    for (int k = 1; k + 1 < argc; ++k)
      if (std::string(argv[k]) == "--format" && std::string(argv[k + 1]) == "json") json = true;
    if (json) {
      Result r;
      r.verdict = "error";
      r.exit_code = 2;
      r.values["message"] = e.what();
      print(r, "json", false);
    } else {
      std::cerr << "kbeq: " << e.what() << "\n";
    }
    return 2;
  }

  const char* env = std::getenv("KBEQ_COLOR");
  bool color = env && std::string(env) == "1";
  Result r;
  try {
    if (validate->parsed()) r = cmd_validate(o);
    else if (info->parsed()) r = cmd_info(o);
    else if (nash_verify->parsed()) r = cmd_nash_verify(o);
    else if (nash_enum->parsed()) r = cmd_nash_enumerate(o);
    else if (corr_verify->parsed()) r = cmd_correlated_verify(o);
    else if (rat->parsed()) r = cmd_rationalizable(o);
    else if (tremble_cmds[0]->parsed()) r = cmd_tremble_check(o, false);
    else if (tremble_cmds[1]->parsed()) r = cmd_tremble_check(o, true);
    else if (kb_check->parsed()) r = cmd_kb_check(o);
    else if (eval->parsed()) r = cmd_eval(o);
  } catch (const std::exception& e) {
    // Library errors here come from the input: inconsistent items, illegal
    // points, imperfect recall and the like.
    r = Result{};
    r.verdict = "error";
    r.exit_code = 2;
    r.values["message"] = e.what();
    if (o.format != "json") std::cerr << "kbeq: " << e.what() << "\n";
    else print(r, o.format, false);
    return 2;
  }
  print(r, o.format, color);
  return r.exit_code;
}
