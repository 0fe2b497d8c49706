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

// Formulas, counterfactuals, knowledge-based programs and implementation.

#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

namespace kbeq {
namespace {

using testing::q;

const EpsNum kEps = EpsNum::eps();

template <class F>
std::size_t run_of(const System<F>& sys, PureProfile types, PureProfile played) {
  for (std::size_t r = 0; r < sys.runs().size(); ++r)
    if (sys.types(r) == types && sys.played(r) == played) return r;
  throw std::runtime_error("no such run");
}

System<Rational> chicken_system(const MixedProfile<Rational>& s) {
  NormalFormGame g = testing::chicken();
  return complete_system(Context<Rational>::normal_form_common(g, prior_from_mixed(g, s)));
}

MixedProfile<Rational> half_half() { return {{q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}}; }

std::shared_ptr<const GameTree> entry_tree() {
  return testing::load_corpus("entry.kbeq").game("entry")->tree;
}

Context<EpsNum> entry_context(BehavioralProfile<Rational> b, TrembleSpec spec = {}) {
  auto t = entry_tree();
  return Context<EpsNum>::extensive_common(t, tremble_prior(*t, b, spec));
}

const BehavioralProfile<Rational> kAcrossDown{{{0, 1}}, {{1, 0}}};
const BehavioralProfile<Rational> kDownAcross{{{1, 0}}, {{0, 1}}};

// ---------------------------------------------------------------------------
// Syntax

TEST(FormulaSyntax, ParsesAndPrints) {
  std::vector<std::string> players{"Alice", "Bob"};
  auto f = parse_formula("B[Alice](do[Alice](T) & cf(do[Alice](B), EU[Alice] <= 2))", players, false);
  auto expect = bel(0, conj({do_strat(0, "T"), cf(do_strat(0, "B"), eu_le(0, EpsNum(2)))}));
  EXPECT_EQ(*f, *expect);
  EXPECT_EQ(*parse_formula(to_string(*f, players), players, false), *f);
}

TEST(FormulaSyntax, ImplicationAndQuantifier) {
  std::vector<std::string> players{"A", "B"};
  auto f = parse_formula("forall x (EU[A] = x -> cf(do[A](down_A), EU[A] <= x))", players, true);
  auto expect = forall_eu(0, "x", implies(eu_eq(0, "x"), cf(do_move(0, "down_A"), eu_le(0, "x"))));
  EXPECT_EQ(*f, *expect);
  EXPECT_EQ(*parse_formula(to_string(*f, players), players, true), *f);
}

TEST(FormulaSyntax, NumbersUseLiteralSyntax) {
  std::vector<std::string> players{"A"};
  auto f = parse_formula("EU[A] <= 1/2 + eps", players, false);
  EXPECT_EQ(*f, *eu_le(0, q(1, 2) + kEps));
}

TEST(FormulaSyntax, Errors) {
  std::vector<std::string> players{"A", "B"};
  EXPECT_THROW(parse_formula("B[C](do[A](x))", players, false), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("EU[A] <= y", players, false), FormulaSyntaxError);  // unbound
  EXPECT_THROW(parse_formula("do[A](x) &", players, false), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("cf(EU[A] <= 1, do[A](x))", players, false), FormulaSyntaxError);
  EXPECT_THROW(parse_formula("do[A](x) do[A](y)", players, false), FormulaSyntaxError);
}

// ---------------------------------------------------------------------------
// Semantics

TEST(Holds, ChickenMixedEquilibriumPoint) {
  auto sys = chicken_system(half_half());
  Point tl{run_of(sys, {0, 0}, {0, 0}), 0};
  EXPECT_TRUE(holds(sys, tl, *bel(0, do_strat(0, "T"))));
  EXPECT_TRUE(holds(sys, tl, *cf(do_strat(0, "B"), eu_le(0, EpsNum(2)))));  // (1/2)4 + (1/2)0
  EXPECT_FALSE(holds(sys, tl, *cf(do_strat(0, "B"), eu_le(0, q(19, 10)))));
  EXPECT_FALSE(holds(sys, tl, *bel(0, do_strat(0, "B"))));
  EXPECT_TRUE(holds(sys, tl, *eu_eq(0, EpsNum(2))));
}

TEST(Holds, ForallBindsActualUtility) {
  auto sys = chicken_system(half_half());
  Point tl{run_of(sys, {0, 0}, {0, 0}), 0};
  auto no_gain = forall_eu(0, "x", implies(eu_eq(0, "x"), cf(do_strat(0, "B"), eu_le(0, "x"))));
  EXPECT_TRUE(holds(sys, tl, *no_gain));
  NormalFormGame g = testing::chicken();
  std::vector<std::size_t> p{0, 0};
  auto pm = chicken_system(point_mass(g, p));
  EXPECT_FALSE(holds(pm, {run_of(pm, {0, 0}, {0, 0}), 0}, *no_gain));  // 4 > 3
}

TEST(Holds, BeliefUndefinedIsFalse) {
  NormalFormGame g = testing::chicken();
  std::vector<std::size_t> p{0, 0};
  auto sys = chicken_system(point_mass(g, p));
  Point off{run_of(sys, {1, 0}, {1, 0}), 0};
  EXPECT_FALSE(holds(sys, off, *bel(0, do_strat(0, "B"))));
  EXPECT_FALSE(holds(sys, off, *eu_le(0, EpsNum(100))));
}

TEST(Holds, StandardPartMode) {
  auto ctx = entry_context(kDownAcross);
  auto sys = complete_system(ctx);
  Point at_b{run_of(sys, {1, 1}, {1, 1}), 1};
  // Exact EU of across_B at I_B is 0, down_B gives 1; the standard part agrees here.
  EXPECT_TRUE(holds(sys, at_b, *cf(do_move(1, "down_B"), eu_eq(1, EpsNum(1))), EuMode::kStandardPart));
  // A at the root: exact EU of across_A has an eps term, its standard part is 0.
  Point root{run_of(sys, {0, 1}, {0, 1}), 0};
  auto val = [&](EuMode m) { return *detail::Evaluator<EpsNum>(sys, m).eu_at(
      counterfactual_shift(sys, root, 0, Deviation::to_move(Action{1})), 0); };
  EXPECT_FALSE(val(EuMode::kExact).is_standard());
  EXPECT_EQ(val(EuMode::kStandardPart), EpsNum(0));
}

// Property: negation and conjunction follow Boolean semantics on atoms.
TEST(Holds, PropositionalSoundness) {
  auto sys = chicken_system({{q(1, 3), q(2, 3)}, {q(3, 4), q(1, 4)}});
  std::vector<FormulaPtr> atoms{
      bel(0, do_strat(0, "T")), bel(1, do_strat(1, "R")), do_strat(0, "B"), do_strat(1, "L"),
      eu_le(0, EpsNum(2)), eu_eq(1, q(5, 2)), cf(do_strat(0, "B"), eu_le(0, EpsNum(3))),
      can_move(0, "T")};
  std::mt19937_64 rng(5);
  std::function<std::pair<FormulaPtr, std::function<bool(const Point&)>>(int)> gen = [&](int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 2 : 0);
    int k = pick(rng);
    if (k == 0) {
      FormulaPtr a = atoms[std::uniform_int_distribution<std::size_t>(0, atoms.size() - 1)(rng)];
      return std::make_pair(a, std::function<bool(const Point&)>(
                                   [&sys, a](const Point& p) { return holds(sys, p, *a); }));
    }
    if (k == 1) {
      auto [f, v] = gen(depth - 1);
      return std::make_pair(neg(f), std::function<bool(const Point&)>([v](const Point& p) { return !v(p); }));
    }
    auto [f1, v1] = gen(depth - 1);
    auto [f2, v2] = gen(depth - 1);
    return std::make_pair(conj({f1, f2}), std::function<bool(const Point&)>(
                                              [v1, v2](const Point& p) { return v1(p) && v2(p); }));
  };
  for (int trial = 0; trial < 50; ++trial) {
    auto [f, oracle] = gen(4);
    for (std::size_t r = 0; r < sys.runs().size(); ++r)
      for (std::size_t m = 0; m < 2; ++m) {
        Point p{r, m};
        EXPECT_EQ(holds(sys, p, *f), oracle(p)) << to_string(*f, {"Alice", "Bob"});
      }
  }
}

// Property: belief formulas depend only on the local state.
TEST(Holds, BeliefIsLocal) {
  auto sys = complete_system(entry_context(kDownAcross));
  KbProgram prog = eqef(*entry_tree());
  for (std::size_t i = 0; i < 2; ++i)
    for (const auto& [ls, pts] : sys.local_states(i))
      for (const Clause& c : prog.clauses[i]) {
        auto b = bel(i, c.guard->args.size() > 1 ? c.guard->args[1]->args[0] : c.guard);
        bool first = holds(sys, pts.front(), *b, EuMode::kStandardPart);
        for (const Point& p : pts) EXPECT_EQ(holds(sys, p, *b, EuMode::kStandardPart), first);
      }
}

// ---------------------------------------------------------------------------
// Counterfactual shifts

TEST(Counterfactual, NormalFormShift) {
  auto sys = chicken_system(half_half());
  Point tl{run_of(sys, {0, 0}, {0, 0}), 0};
  Point shifted = counterfactual_shift(sys, tl, 0, Deviation::to_strategy(1));
  EXPECT_EQ(sys.played(shifted.run), (PureProfile{1, 0}));
  EXPECT_EQ(sys.types(shifted.run), (PureProfile{0, 0}));
  EXPECT_EQ(counterfactual_shift(sys, tl, 0, Deviation::to_strategy(0)), tl);
  EXPECT_THROW(counterfactual_shift(sys, tl, 0, Deviation::to_strategy(7)), IllegalDeviation);
}

TEST(Counterfactual, ExtensiveMoveShift) {
  auto sys = complete_system(entry_context(kDownAcross));
  std::size_t r = run_of(sys, {1, 1}, {1, 1});
  Point at_b{r, 1};
  Point q = counterfactual_shift(sys, at_b, 1, Deviation::to_move(Action{0}));
  EXPECT_EQ(q.time, 1u);
  const auto& orig = sys.run(r).path;
  const auto& dev = sys.run(q.run).path;
  // Identical up to time 1, then B plays down_B.
  EXPECT_EQ(std::vector<std::size_t>(dev.begin(), dev.begin() + 2),
            std::vector<std::size_t>(orig.begin(), orig.begin() + 2));
  EXPECT_EQ(sys.run(q.run).path.back(), *entry_tree()->node_index("b:down_B"));
  EXPECT_THROW(counterfactual_shift(sys, {r, 0}, 1, Deviation::to_move(Action{0})), IllegalDeviation);
}

// Property: shifting to the factual choice is the identity, and shifting
// away and back returns the original point.
TEST(Counterfactual, ShiftBack) {
  for (auto* ctxp : {new Context<EpsNum>(entry_context(kDownAcross)), new Context<EpsNum>(entry_context(kAcrossDown))}) {
    std::unique_ptr<Context<EpsNum>> ctx(ctxp);
    auto sys = complete_system(*ctx);
    for (std::size_t r = 0; r < sys.runs().size(); ++r)
      for (std::size_t m = 0; m < sys.num_times(r); ++m)
        for (std::size_t i = 0; i < 2; ++i) {
          Point p{r, m};
          EXPECT_EQ(counterfactual_shift(sys, p, i, Deviation::to_strategy(sys.played(r)[i])), p);
          Action own = sys.action_at(p, i);
          if (own.is_skip()) continue;
          for (std::size_t a = 0; a < 2; ++a) {
            Point q = counterfactual_shift(sys, p, i, Deviation::to_move(Action{a}));
            EXPECT_EQ(counterfactual_shift(sys, q, i, Deviation::to_move(own)), p);
          }
        }
  }
}

// ---------------------------------------------------------------------------
// Programs

TEST(Program, EqnfClauses) {
  KbProgram p = eqnf(testing::chicken());
  EXPECT_EQ(p.clauses[0].size(), 2u);
  EXPECT_EQ(p.clauses[1].size(), 2u);
  EXPECT_EQ(p.clauses[0][0].action, "T");
  NormalFormGame g = testing::corpus_normal("dominance3x3.kbeq", "dominance");
  EXPECT_EQ(eqnf(g).size(), 6u);
}

TEST(Program, EqefClauses) {
  KbProgram p = eqef(*entry_tree());
  std::vector<std::string> b;
  for (const auto& c : p.clauses[1]) b.push_back(c.action);
  EXPECT_EQ(b, (std::vector<std::string>{"down_B", "across_B", "Skip"}));
}

TEST(Program, EqnfDerivedProtocolAtMixedEquilibrium) {
  auto sys = chicken_system(half_half());
  auto d = derived_protocol(eqnf(testing::chicken()), sys, 0);
  LocalState st{LocalState::Kind::kInitial, 0, 0, {}};
  LocalState sb{LocalState::Kind::kInitial, 1, 0, {}};
  EXPECT_EQ(d.at(st), std::optional<Action>(Action{0}));
  EXPECT_EQ(d.at(sb), std::optional<Action>(Action{1}));
}

TEST(Program, UnreachableStateIsUndefined) {
  NormalFormGame g = testing::chicken();
  std::vector<std::size_t> p{0, 0};
  auto sys = chicken_system(point_mass(g, p));
  auto d = derived_protocol(eqnf(g), sys, 0);
  EXPECT_EQ(d.at({LocalState::Kind::kInitial, 1, 0, {}}), std::nullopt);
}

TEST(Program, EqefOffPathInfoset) {
  auto sys = complete_system(entry_context(kDownAcross));
  auto d = derived_protocol(eqef(*entry_tree()), sys, 1, EuMode::kStandardPart);
  LocalState at_b{LocalState::Kind::kAtInfoset, 1, *entry_tree()->infoset_index("I_B"), {}};
  // B believes it plays across_B, which is not optimal, so no guard holds;
  // the better move is down_B (1 against 0).
  EXPECT_EQ(d.at(at_b), std::nullopt);
  Point p{run_of(sys, {1, 1}, {1, 1}), 1};
  auto [name, eu] = best_deviation(sys, p, 1, EuMode::kStandardPart);
  EXPECT_EQ(name, "down_B");
  EXPECT_EQ(eu, EpsNum(1));
  // Under (across_A, down_B) the down_B guard fires.
  auto good = complete_system(entry_context(kAcrossDown));
  auto dg = derived_protocol(eqef(*entry_tree()), good, 1, EuMode::kStandardPart);
  LocalState good_b{LocalState::Kind::kAtInfoset, 0, *entry_tree()->infoset_index("I_B"), {}};
  EXPECT_EQ(dg.at(good_b), std::optional<Action>(Action{0}));
  // Non-movers Skip.
  LocalState idle{LocalState::Kind::kIdle, 1, 0, {}};
  EXPECT_EQ(d.at(idle), std::optional<Action>(Action::skip()));
}

TEST(Implements, Chicken) {
  NormalFormGame g = testing::chicken();
  auto ctx = Context<Rational>::normal_form_common(g, prior_from_mixed(g, half_half()));
  EXPECT_TRUE(implements(standard_protocol(ctx), eqnf(g), ctx).implements);

  std::vector<std::size_t> p{0, 0};
  auto pm = Context<Rational>::normal_form_common(g, prior_from_mixed(g, point_mass(g, p)));
  Verdict v = implements(standard_protocol(pm), eqnf(g), pm);
  ASSERT_FALSE(v.implements);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->player_name, "Alice");
  EXPECT_EQ(v.witness->local_state, "s_T");
  EXPECT_EQ(v.witness->actual, "T");
  EXPECT_EQ(v.witness->factual_eu, EpsNum(3));
  EXPECT_EQ(v.witness->deviation, "B");
  EXPECT_EQ(v.witness->deviation_eu, EpsNum(4));
  EXPECT_EQ(v.witness->gap, EpsNum(1));
}

TEST(Implements, OneStrategyGame) {
  NormalFormGame g = testing::corpus_normal("trivial.kbeq", "single");
  auto ctx = Context<Rational>::normal_form_common(g, {1});
  EXPECT_TRUE(implements(standard_protocol(ctx), eqnf(g), ctx).implements);
}

TEST(Implements, EntryGameScopes) {
  auto good = entry_context(kAcrossDown);
  KbProgram prog = eqef(*entry_tree());
  EXPECT_TRUE(implements(standard_protocol(good), prog, good).implements);
  EXPECT_TRUE(implements(standard_protocol(good), prog, good, Scope::kOwnTypeStandard, EuMode::kStandardPart).implements);
  // With every trembled type in scope, A's type down_A is checked and fails.
  Verdict all = implements(standard_protocol(good), prog, good, Scope::kPositiveMass);
  ASSERT_FALSE(all.implements);
  EXPECT_EQ(all.witness->local_state, "(s_down_A, I_A)");

  auto bad = entry_context(kDownAcross);
  Verdict v = implements(standard_protocol(bad), prog, bad);
  ASSERT_FALSE(v.implements);
  EXPECT_EQ(v.witness->player_name, "B");
  EXPECT_EQ(v.witness->local_state, "(s_across_B, I_B)");
  EXPECT_EQ(v.witness->deviation, "down_B");
  EXPECT_EQ(v.witness->gap, EpsNum(1));
}

// Property: the witness gap equals deviation EU minus factual EU.
TEST(Implements, WitnessIsConsistent) {
  for (const char* file : {"random_a.kbeq", "random_b.kbeq", "prisoners_dilemma.kbeq"}) {
    Document doc = testing::load_corpus(file);
    NormalFormGame g = doc.game(doc.names(ItemKind::kGame).front())->normal();
    for (std::size_t k = 0; k < g.num_profiles(); ++k) {
      auto p = g.profile_at(k);
      auto ctx = Context<Rational>::normal_form_common(g, prior_from_mixed(g, point_mass(g, p)));
      Verdict v = implements(standard_protocol(ctx), eqnf(g), ctx);
      if (v.implements) continue;
      ASSERT_TRUE(v.witness);
      ASSERT_TRUE(v.witness->gap && v.witness->factual_eu && v.witness->deviation_eu);
      EXPECT_EQ(*v.witness->gap, *v.witness->deviation_eu - *v.witness->factual_eu);
      EXPECT_GT(*v.witness->gap, EpsNum(0));
    }
  }
}

}  // namespace
}  // namespace kbeq
