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

// Contexts, priors, trembles, generated and complete systems, belief
// conditioning and expected utility at points.

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace kbeq {
namespace {

using testing::q;

const EpsNum kEps = EpsNum::eps();

std::shared_ptr<const GameTree> entry_tree() {
  return testing::load_corpus("entry.kbeq").game("entry")->tree;
}

// Run of `sys` with the given types and played profile (no chance).
std::size_t run_of(const System<EpsNum>& sys, PureProfile types, PureProfile played) {
  for (std::size_t r = 0; r < sys.runs().size(); ++r)
    if (sys.types(r) == types && sys.played(r) == played) return r;
  throw std::runtime_error("no such run");
}
std::size_t run_of(const System<Rational>& sys, PureProfile types, PureProfile played) {
  for (std::size_t r = 0; r < sys.runs().size(); ++r)
    if (sys.types(r) == types && sys.played(r) == played) return r;
  throw std::runtime_error("no such run");
}

MixedProfile<Rational> half_half() { return {{q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}}; }

TEST(Prior, FromMixedProfile) {
  NormalFormGame g = testing::chicken();
  EXPECT_EQ(prior_from_mixed(g, half_half()), (std::vector<Rational>(4, q(1, 4))));
  std::vector<std::size_t> tl{0, 1};
  EXPECT_EQ(prior_from_mixed(g, point_mass(g, tl)), (std::vector<Rational>{0, 1, 0, 0}));
  MixedProfile<Rational> s{{q(1, 3), q(2, 3)}, {1, 0}};
  EXPECT_EQ(prior_from_mixed(g, s), (std::vector<Rational>{q(1, 3), 0, q(2, 3), 0}));
}

TEST(Prior, TrembleAroundEntryProfiles) {
  auto t = entry_tree();
  NormalFormGame sf = strategic_form(*t);
  auto idx = [&](const char* a, const char* b) {
    std::vector<std::size_t> p{*sf.strategy_index(0, a), *sf.strategy_index(1, b)};
    return sf.profile_index(p);
  };
  BehavioralProfile<Rational> b{{{0, 1}}, {{1, 0}}};  // (across_A, down_B)
  auto mu = tremble_prior(*t, b, {});
  EXPECT_EQ(mu[idx("across_A", "down_B")], EpsNum(1) / ((1 + kEps) * (1 + kEps)));
  EXPECT_EQ(standard_part(mu[idx("across_A", "down_B")]), q(1));
  EXPECT_EQ(mu[idx("down_A", "across_B")], (kEps / (1 + kEps)) * (kEps / (1 + kEps)));
  EXPECT_EQ(standard_part(mu[idx("down_A", "across_B")]), q(0));
  EpsNum total(0);
  for (const auto& m : mu) {
    EXPECT_GT(m, EpsNum(0));
    total += m;
  }
  EXPECT_EQ(total, EpsNum(1));
}

TEST(Prior, TrembleExponents) {
  auto t = entry_tree();
  BehavioralProfile<Rational> b{{{0, 1}}, {{1, 0}}};
  TrembleSpec spec;
  spec.exponents[{*t->infoset_index("I_B"), 1}] = 2;
  auto tb = trembled(*t, 1, b[1], spec);
  EXPECT_EQ(tb[0][1], kEps * kEps / (1 + kEps * kEps));
  spec.default_exponent = 0;
  EXPECT_THROW(trembled(*t, 0, b[0], spec), Error);
}

TEST(Prior, ImperfectRecallHasNoTremblePrior) {
  auto t = testing::load_corpus("forgetful.kbeq").game("forgetful")->tree;
  BehavioralProfile<Rational> b(1);
  for (std::size_t k = 0; k < t->player_infosets(0).size(); ++k) b[0].push_back({1, 0});
  EXPECT_THROW(tremble_prior(*t, b, {}), ImperfectRecall);
}

TEST(Context, RejectsBadPriors) {
  NormalFormGame g = testing::chicken();
  auto states = Context<Rational>::all_profiles(g);
  EXPECT_THROW(Context<Rational>::normal_form(g, states, {{1, 0, 0, 0}}), Error);  // one player missing
  EXPECT_THROW(Context<Rational>::normal_form(g, states, {{1, 1, 0, 0}, {1, 0, 0, 0}}), Error);
  EXPECT_THROW(Context<Rational>::normal_form(g, states, {{2, -1, 0, 0}, {1, 0, 0, 0}}), Error);
  std::vector<PureProfile> dup{{0, 0}, {0, 0}};
  EXPECT_THROW(Context<Rational>::normal_form(g, dup, {{1, 0}, {1, 0}}), Error);
}

TEST(Generated, NormalFormRuns) {
  auto ctx = Context<Rational>::normal_form_common(testing::chicken(), prior_from_mixed(testing::chicken(), half_half()));
  auto sys = generate_system(standard_protocol(ctx), ctx);
  ASSERT_EQ(sys.runs().size(), 4u);
  for (std::size_t r = 0; r < 4; ++r) {
    EXPECT_EQ(sys.num_times(r), 2u);
    EXPECT_EQ(sys.types(r), sys.played(r));  // the standard protocol plays the type
  }
}

TEST(Generated, EntryGameRuns) {
  auto t = entry_tree();
  auto ctx = Context<EpsNum>::extensive_common(t, tremble_prior(*t, {{{0, 1}}, {{1, 0}}}, {}));
  auto sys = generate_system(standard_protocol(ctx), ctx);
  EXPECT_EQ(sys.runs().size(), 4u);
}

TEST(Generated, PointMassPrior) {
  NormalFormGame g = testing::chicken();
  std::vector<std::size_t> tl{0, 0};
  auto ctx = Context<Rational>::normal_form_common(g, prior_from_mixed(g, point_mass(g, tl)));
  auto sys = generate_system(standard_protocol(ctx), ctx);
  int positive = 0;
  for (std::size_t r = 0; r < sys.runs().size(); ++r) {
    if (!sys.prior(0, r).is_zero()) {
      ++positive;
      EXPECT_EQ(sys.prior(0, r), q(1));
    }
  }
  EXPECT_EQ(positive, 1);
}

TEST(Generated, InappropriateProtocolIsRejected) {
  auto t = entry_tree();
  auto ctx = Context<Rational>::extensive_common(t, std::vector<Rational>{1, 0, 0, 0});
  JointProtocol p = standard_protocol(ctx);
  p[1] = [](const LocalState&) { return Action{0}; };  // never Skips
  EXPECT_THROW(generate_system(p, ctx), Error);
  JointProtocol skips = standard_protocol(ctx);
  skips[0] = [](const LocalState&) { return Action::skip(); };  // Skips where it must move
  EXPECT_THROW(generate_system(skips, ctx), Error);
}

TEST(Complete, ChickenHasSixteenRuns) {
  NormalFormGame g = testing::chicken();
  auto ctx = Context<Rational>::normal_form_common(g, prior_from_mixed(g, half_half()));
  auto gen = generate_system(standard_protocol(ctx), ctx);
  auto full = complete_system(gen);
  EXPECT_EQ(full.runs().size(), 16u);
  // Every generated run appears with the same prior; the rest have mass 0.
  Rational total;
  for (std::size_t r = 0; r < full.runs().size(); ++r) {
    if (full.factual(r)) {
      EXPECT_EQ(full.types(r), full.played(r));
      EXPECT_EQ(full.prior(0, r), q(1, 4));
    } else {
      EXPECT_TRUE(full.prior(0, r).is_zero());
    }
    total += full.prior(0, r);
  }
  EXPECT_EQ(total, q(1));
  for (std::size_t r = 0; r < gen.runs().size(); ++r)
    EXPECT_TRUE(full.factual(run_of(full, gen.types(r), gen.played(r))));
}

TEST(Complete, SingletonInitialState) {
  NormalFormGame g = testing::chicken();
  auto ctx = Context<Rational>::normal_form(g, {{1, 1}}, {{1}, {1}});
  auto full = complete_system(ctx);
  EXPECT_EQ(full.runs().size(), g.num_profiles());
}

TEST(Complete, ChanceBranchesAreSeparateRuns) {
  auto t = testing::load_corpus("signaling.kbeq").game("signaling")->tree;
  NormalFormGame sf = strategic_form(*t);
  std::vector<Rational> joint(sf.num_profiles(), q(1, static_cast<long long>(sf.num_profiles())));
  auto ctx = Context<Rational>::extensive_common(t, joint);
  auto gen = generate_system(standard_protocol(ctx), ctx);
  EXPECT_EQ(gen.runs().size(), 2 * sf.num_profiles());
  Rational total;
  for (std::size_t r = 0; r < gen.runs().size(); ++r) total += gen.prior(0, r);
  EXPECT_EQ(total, q(1));
  EXPECT_EQ(complete_system(gen).runs().size(), 2 * sf.num_profiles() * sf.num_profiles());
}

TEST(Indistinguishable, NormalFormTypeClass) {
  NormalFormGame g = testing::chicken();
  auto ctx = Context<Rational>::normal_form_common(g, prior_from_mixed(g, half_half()));
  auto full = complete_system(ctx);
  std::size_t r = run_of(full, {0, 0}, {0, 0});
  const auto& cls = indistinguishable(full, Point{r, 0}, 0);
  EXPECT_EQ(cls.size(), 8u);  // 2 Bob types x 4 played profiles
  for (const Point& p : cls) {
    EXPECT_EQ(p.time, 0u);
    EXPECT_EQ(full.types(p.run)[0], 0u);
  }
  EXPECT_EQ(full.describe_local_state(0, full.local_state({r, 0}, 0)), "s_T");
}

TEST(Indistinguishable, LocalStatesDetermineClasses) {
  auto t = entry_tree();
  auto ctx = Context<EpsNum>::extensive_common(t, tremble_prior(*t, {{{1, 0}}, {{0, 1}}}, {}));
  auto full = complete_system(ctx);
  for (std::size_t i = 0; i < 2; ++i)
    for (const auto& [ls, points] : full.local_states(i))
      for (const Point& p : points) {
        EXPECT_EQ(full.local_state(p, i), ls);
        // Terminal points carry the realized payoff.
        if (ls.kind == LocalState::Kind::kTerminal) {
          EXPECT_EQ(t->node(full.run(p.run).path[p.time]).payoff[i], ls.payoff);
        }
      }
  std::size_t r = run_of(full, {1, 1}, {1, 1});
  EXPECT_EQ(full.describe_local_state(1, full.local_state({r, 1}, 1)), "(s_across_B, I_B)");
  EXPECT_EQ(full.describe_local_state(1, full.local_state({r, 0}, 1)), "(s_across_B, idle)");
  EXPECT_EQ(full.describe_local_state(1, full.local_state({r, 2}, 1)), "(s_across_B, payoff 0)");
}

TEST(Conditioning, MixedEquilibriumBeliefs) {
  NormalFormGame g = testing::chicken();
  auto ctx = Context<Rational>::normal_form_common(g, prior_from_mixed(g, half_half()));
  auto sys = generate_system(standard_protocol(ctx), ctx);
  std::size_t r = run_of(sys, {0, 0}, {0, 0});
  auto c = condition_prior(sys, {r, 0}, 0);
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)[run_of(sys, {0, 0}, {0, 0})], q(1, 2));
  EXPECT_EQ((*c)[run_of(sys, {0, 1}, {0, 1})], q(1, 2));
  EXPECT_EQ((*c)[run_of(sys, {1, 0}, {1, 0})], q(0));
}

TEST(Conditioning, NullEventIsUndefined) {
  NormalFormGame g = testing::chicken();
  std::vector<std::size_t> tl{0, 0};
  auto ctx = Context<Rational>::normal_form_common(g, prior_from_mixed(g, point_mass(g, tl)));
  auto sys = complete_system(ctx);
  std::size_t r = run_of(sys, {1, 0}, {1, 0});
  EXPECT_FALSE(condition_prior(sys, {r, 0}, 0));
  EXPECT_FALSE(try_point_eu(sys, {r, 0}, 0));
  EXPECT_THROW(point_eu(sys, {r, 0}, 0), UndefinedExpectation);
}

TEST(Conditioning, FullSupportTremblesAreNeverUndefined) {
  auto t = entry_tree();
  auto ctx = Context<EpsNum>::extensive_common(t, tremble_prior(*t, {{{1, 0}}, {{0, 1}}}, {}));
  auto sys = generate_system(standard_protocol(ctx), ctx);
  for (std::size_t r = 0; r < sys.runs().size(); ++r)
    for (std::size_t m = 0; m < sys.num_times(r); ++m)
      for (std::size_t i = 0; i < 2; ++i) EXPECT_TRUE(condition_prior(sys, {r, m}, i));
}

TEST(PointEu, ChickenValues) {
  NormalFormGame g = testing::chicken();
  auto ctx = Context<Rational>::normal_form_common(g, prior_from_mixed(g, half_half()));
  auto sys = generate_system(standard_protocol(ctx), ctx);
  EXPECT_EQ(point_eu(sys, {run_of(sys, {0, 0}, {0, 0}), 0}, 0), q(2));  // (1/2)3 + (1/2)1

  std::vector<std::size_t> bl{1, 0};
  auto ctx2 = Context<Rational>::normal_form_common(g, prior_from_mixed(g, point_mass(g, bl)));
  auto sys2 = generate_system(standard_protocol(ctx2), ctx2);
  EXPECT_EQ(point_eu(sys2, {run_of(sys2, {1, 0}, {1, 0}), 0}, 0), q(4));
}

TEST(PointEu, CounterfactualContinuationAtOffPathInfoset) {
  // Trembles around (down_A, across_B); B at I_B considers down_B.
  auto t = entry_tree();
  auto ctx = Context<EpsNum>::extensive_common(t, tremble_prior(*t, {{{1, 0}}, {{0, 1}}}, {}));
  auto full = complete_system(ctx);
  std::size_t cf = run_of(full, {1, 1}, {1, 0});  // type across_B, plays down_B
  ASSERT_EQ(full.local_state({cf, 1}, 1).kind, LocalState::Kind::kAtInfoset);
  EXPECT_EQ(point_eu(full, {cf, 1}, 1, EuMode::kStandardPart), EpsNum(1));
  std::size_t fact = run_of(full, {1, 1}, {1, 1});
  EXPECT_EQ(point_eu(full, {fact, 1}, 1, EuMode::kStandardPart), EpsNum(0));
}

TEST(PointEu, ExpectationMatchesHandComputedConditionalSum) {
  // Oracle: sum prior * payoff over runs with Alice's type, divided by mass.
  NormalFormGame g = testing::corpus_normal("random_b.kbeq", "random_b");
  MixedProfile<Rational> s{{q(1, 5), q(4, 5)}, {q(2, 7), q(5, 7)}};
  auto mu = prior_from_mixed(g, s);
  auto ctx = Context<Rational>::normal_form_common(g, mu);
  auto sys = generate_system(standard_protocol(ctx), ctx);
  for (std::size_t r = 0; r < sys.runs().size(); ++r)
    for (std::size_t i = 0; i < 2; ++i) {
      Rational num, den;
      for (std::size_t k = 0; k < g.num_profiles(); ++k)
        if (g.profile_at(k)[i] == sys.types(r)[i]) {
          num += mu[k] * g.payoff(k)[i];
          den += mu[k];
        }
      EXPECT_EQ(point_eu(sys, {r, 0}, i), num / den);
    }
}

}  // namespace
}  // namespace kbeq
