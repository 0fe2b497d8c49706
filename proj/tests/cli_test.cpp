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

// End-to-end tests of the kbeq executable.

#include <gtest/gtest.h>

#include "cli_matrix.hpp"
#include "json.hpp"

namespace kbeq {
namespace {

using testing::run_cli;

TEST(Cli, MatrixExitCodesAndJson) {
  for (const auto& inv : testing::cli_matrix()) {
    auto table = run_cli(inv.args, false);
    EXPECT_EQ(table.exit_code, inv.exit_code) << inv.args;
    auto json = run_cli(inv.args, true);
    EXPECT_EQ(json.exit_code, inv.exit_code) << inv.args;
    nlohmann::json j;
    ASSERT_NO_THROW(j = nlohmann::json::parse(json.out)) << inv.args << "\n" << json.out;
    EXPECT_TRUE(j.contains("verdict")) << inv.args;
    EXPECT_TRUE(j.contains("witness")) << inv.args;
    EXPECT_TRUE(j.contains("values")) << inv.args;
    for (const auto& s : inv.expect) EXPECT_NE(json.out.find(s), std::string::npos) << inv.args << " lacks " << s << "\n" << json.out;
  }
}

TEST(Cli, OutputIsDeterministic) {
  for (const char* args : {"nash enumerate chicken.kbeq", "sequential verify entry.kbeq --profile down_across",
                           "rationalizable dominance3x3.kbeq", "info signaling.kbeq"}) {
    EXPECT_EQ(run_cli(args, false).out, run_cli(args, false).out) << args;
    EXPECT_EQ(run_cli(args, true).out, run_cli(args, true).out) << args;
  }
}

TEST(Cli, TableOutputNamesVerdictAndWitness) {
  auto o = run_cli("sequential verify entry.kbeq --profile down_across", false);
  EXPECT_EQ(o.out.rfind("verdict: refuted\n", 0), 0u) << o.out;
  EXPECT_NE(o.out.find("local_state: (s_across_B, I_B)"), std::string::npos);
  EXPECT_NE(o.out.find("prescribed: undefined"), std::string::npos);
  EXPECT_NE(o.out.find("gap: 1"), std::string::npos);
}

TEST(Cli, ColorOnlyWhenRequested) {
  std::string base = std::string("cd '") + KBEQ_CORPUS_DIR + "' && ";
  std::string cmd = std::string("'") + KBEQ_CLI_PATH + "' nash verify chicken.kbeq --profile mixed";
  auto plain = testing::run_command(base + cmd);
  auto colored = testing::run_command(base + "KBEQ_COLOR=1 " + cmd);
  EXPECT_EQ(plain.out.find('\033'), std::string::npos);
  EXPECT_NE(colored.out.find('\033'), std::string::npos);
  EXPECT_EQ(colored.exit_code, 0);
}

TEST(Cli, MissingSubcommandIsInputError) {
  EXPECT_EQ(testing::run_command(std::string("'") + KBEQ_CLI_PATH + "' 2>/dev/null").exit_code, 2);
  EXPECT_EQ(testing::run_command(std::string("'") + KBEQ_CLI_PATH + "' nash 2>/dev/null").exit_code, 2);
}

}  // namespace
}  // namespace kbeq
