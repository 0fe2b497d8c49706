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

// Document parsing, diagnostics and canonical rendering.

#include <gtest/gtest.h>

#include <filesystem>

#include "test_support.hpp"

namespace kbeq {
namespace {

using testing::q;

std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(KBEQ_CORPUS_DIR))
    if (e.path().extension() == ".kbeq") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Parse, ChickenTable) {
  Document doc = testing::load_corpus("chicken.kbeq");
  const GamePayload* g = doc.game("chicken");
  ASSERT_TRUE(g);
  EXPECT_EQ(g->normal(), testing::chicken());
  EXPECT_EQ(doc.names(ItemKind::kMeasure), (std::vector<std::string>{"three_cell", "point_TL"}));
}

TEST(Parse, EmptyDocument) {
  auto r = parse_document("");
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.document.empty());
  auto c = parse_document("# only a comment\n");
  EXPECT_TRUE(c.ok());
  EXPECT_TRUE(c.document.empty());
}

TEST(Parse, HeaderIsRequired) {
  auto r = parse_document("game \"g\" normal { players: A; strategies A: x; payoff (x) = (0); }");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics[0].line, 1u);
}

TEST(Parse, PayoffArity) {
  auto r = parse_document(
      "kbeq 1\ngame \"g\" normal {\n  players: A, B;\n  strategies A: T;\n  strategies B: L;\n"
      "  payoff (T,L) = (3);\n}\n");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics[0].code, DiagCode::kArity);
  EXPECT_EQ(r.diagnostics[0].line, 6u);
}

TEST(Parse, ExtensiveWithChance) {
  Document doc = testing::load_corpus("signaling.kbeq");
  const GameTree& t = *doc.game("signaling")->tree;
  EXPECT_EQ(t.node(t.root()).kind, NodeKind::kChance);
  EXPECT_EQ(t.node(t.root()).chance, (std::vector<Rational>{q(1, 3), q(2, 3)}));
  EXPECT_EQ(t.infoset(*t.infoset_index("J_up")).nodes.size(), 2u);
}

TEST(Parse, ProfilesMeasuresTremblesFormulas) {
  Document doc = testing::load_corpus("entry.kbeq");
  auto b = testing::corpus_behavioral("entry.kbeq", "down_across");
  EXPECT_EQ(b, (BehavioralProfile<Rational>{{{1, 0}}, {{0, 1}}}));
  const auto& tr = std::get<TremblePayload>(doc.find("slow_B", ItemKind::kTremble)->payload);
  EXPECT_EQ(tr.spec.default_exponent, 1u);
  EXPECT_EQ(tr.spec.exponent(1, 1), 2u);
  const auto& f = std::get<FormulaPayload>(doc.find("B_prefers_down", ItemKind::kFormula)->payload);
  EXPECT_EQ(f.formula->kind, Formula::Kind::kBel);

  Document fig = testing::load_corpus("chicken.kbeq");
  const auto& m = std::get<MeasurePayload>(fig.find("three_cell", ItemKind::kMeasure)->payload);
  EXPECT_EQ(m.joint, (std::vector<EpsNum>{q(1, 3), q(1, 3), q(1, 3), 0}));
}

TEST(Parse, NonstandardProbabilities) {
  auto r = parse_document(
      "kbeq 1\ngame \"g\" normal { players: A; strategies A: x, y; payoff (x) = (1); payoff (y) = (0); }\n"
      "profile \"p\" for \"g\" { A: { x: 1 - eps, y: eps }; }\n");
  ASSERT_TRUE(r.ok()) << r.diagnostics[0].to_string();
  const auto& p = std::get<ProfilePayload>(r.document.find("p")->payload);
  EXPECT_EQ(std::get<MixedProfile<EpsNum>>(p.value)[0][1], EpsNum::eps());
  EXPECT_THROW(standard_mixed(std::get<MixedProfile<EpsNum>>(p.value)), Error);
}

TEST(Parse, SemanticErrorsAreDiagnostics) {
  // Profile does not sum to one; measure names an unknown strategy.
  auto r = parse_document(
      "kbeq 1\ngame \"g\" normal { players: A; strategies A: x, y; payoff (x) = (1); payoff (y) = (0); }\n"
      "profile \"p\" for \"g\" { A: { x: 1/2 }; }\n"
      "measure \"m\" for \"g\" { (z): 1; }\n");
  ASSERT_GE(r.diagnostics.size(), 2u);
  EXPECT_EQ(r.diagnostics[0].line, 3u);
  EXPECT_EQ(r.diagnostics[1].line, 4u);
  EXPECT_EQ(r.diagnostics[1].code, DiagCode::kUnknownReference);
  // The valid game survives.
  EXPECT_TRUE(r.document.game("g"));
}

struct MalformedCase {
  const char* file;
  std::size_t line;
  DiagCode code;
};

TEST(Parse, MalformedCorpusLines) {
  const MalformedCase cases[] = {
      {"malformed/missing_semicolon.kbeq", 6, DiagCode::kSyntax},
      {"malformed/unknown_game.kbeq", 9, DiagCode::kUnknownReference},
      {"malformed/duplicate_item.kbeq", 9, DiagCode::kDuplicateName},
      {"malformed/payoff_arity.kbeq", 6, DiagCode::kArity},
      {"malformed/unknown_child.kbeq", 7, DiagCode::kUnknownReference},
  };
  for (const auto& c : cases) {
    auto r = parse_document(testing::read_file(testing::corpus_path(c.file)));
    ASSERT_FALSE(r.ok()) << c.file;
    EXPECT_EQ(r.diagnostics[0].line, c.line) << c.file;
    EXPECT_EQ(r.diagnostics[0].code, c.code) << c.file;
    EXPECT_EQ(r.diagnostics[0].to_string().find(std::to_string(c.line) + ":"), 0u) << c.file;
  }
}

TEST(Render, RoundTripOnCorpus) {
  auto files = corpus_files();
  ASSERT_GE(files.size(), 6u);
  for (const auto& f : files) {
    Document doc = testing::load_corpus(f);
    std::string text = render(doc);
    auto again = parse_document(text);
    ASSERT_TRUE(again.ok()) << f << "\n" << text;
    EXPECT_EQ(again.document, doc) << f;
    EXPECT_EQ(render(again.document), text) << f;  // canonical form is a fixed point
  }
}

TEST(Render, ReducedRationalsAndCanonicalOrder) {
  auto r = parse_document(
      "kbeq 1\n"
      "game \"g\" normal {\n"
      "  players: A, B;\n"
      "  strategies B: R, L;\n"
      "  strategies A: x;\n"
      "  payoff (x, L) = (2/4, 1);\n"
      "  payoff (x, R) = (0, 6/3);\n"
      "}\n");
  ASSERT_TRUE(r.ok()) << r.diagnostics[0].to_string();
  std::string text = render(r.document);
  EXPECT_NE(text.find("1/2"), std::string::npos);
  EXPECT_EQ(text.find("2/4"), std::string::npos);
  EXPECT_EQ(text.find("6/3"), std::string::npos);
  // Players first, then strategies in declared order, then the table.
  auto players = text.find("players: A, B;");
  auto sa = text.find("strategies A: x;");
  auto sb = text.find("strategies B: R, L;");
  auto first_payoff = text.find("payoff (x, R)");
  ASSERT_NE(players, std::string::npos);
  ASSERT_NE(first_payoff, std::string::npos) << text;
  EXPECT_LT(players, sa);
  EXPECT_LT(sa, sb);
  EXPECT_LT(sb, first_payoff);
}

// Property: no prefix of a corpus file makes the parser throw, and every
// failed prefix carries at least one positioned diagnostic.
TEST(Parse, PrefixesNeverThrow) {
  for (const auto& f : corpus_files()) {
    std::string text = testing::read_file(testing::corpus_path(f));
    for (std::size_t n = 0; n <= text.size(); n += 3) {
      ParseResult r;
      ASSERT_NO_THROW(r = parse_document(text.substr(0, n))) << f << " prefix " << n;
      if (!r.ok()) {
        EXPECT_GE(r.diagnostics[0].line, 1u);
        EXPECT_GE(r.diagnostics[0].column, 1u);
      }
    }
  }
}

}  // namespace
}  // namespace kbeq
