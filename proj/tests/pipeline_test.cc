// Copyright 2026 The tabkb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tabkb/pipeline.h"

#include <sys/wait.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "gtest/gtest.h"
#include "tabkb/config.h"
#include "tabkb/metrics.h"

namespace tabkb {
namespace {

std::string Src(const std::string& rel) { return std::string(TABKB_SOURCE_DIR) + "/" + rel; }

int Cli(const std::string& args) {
  const std::string cmd = std::string("'") + TABKB_CLI + "' " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

TEST(ParallelMapTest, IndexOrderForAnyWorkerCount) {
  for (int workers : {0, 1, 3, 16}) {
    const auto out = ParallelMap(50, workers, [](size_t i) { return static_cast<int>(i * i); });
    ASSERT_EQ(out.size(), 50u);
    for (size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i));
  }
  EXPECT_TRUE(ParallelMap(0, 4, [](size_t) { return 1; }).empty());
}

TEST(ParallelMapTest, LowestIndexErrorIsRethrown) {
  try {
    ParallelMap(20, 4, [](size_t i) -> int {
      if (i == 7 || i == 13) throw std::runtime_error("item " + std::to_string(i));
      return 0;
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "item 7");
  }
}

TEST(ManifestTest, Sha256KnownVector) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(CorpusTest, RulesExtractMatchesGoldenFile) {
  const auto tables = ParseTableDocument(ReadFileBytes(Src("data/corpus/tables.jsonl")));
  ASSERT_EQ(tables.size(), 20u);
  std::vector<TableExtraction> got;
  for (const auto& o : ExtractTables(tables, DefaultConfig(), RulesClassifier(), 2)) {
    ASSERT_TRUE(o.error.empty()) << o.error;
    got.push_back(o.extraction);
  }
  const std::string golden = ReadFileBytes(Src("data/corpus/golden_extract.jsonl"));
  EXPECT_EQ(SerializeExtractions(got), golden);
  EXPECT_EQ(SerializeExtractions(ParseExtractions(golden)), golden);
}

TEST(CorpusTest, GoldLabelsReproduceGoldTuples) {
  const auto tables = ParseTableDocument(ReadFileBytes(Src("data/corpus/tables_labeled.jsonl")));
  std::vector<ExtractedTuple> got;
  for (const auto& t : tables) {
    const auto x = ExtractLabeled(t, DefaultConfig()).extraction;
    got.insert(got.end(), x.properties.begin(), x.properties.end());
  }
  const auto gold = LoadPropertyTuples(ReadFileBytes(Src("data/corpus/gold_tuples.jsonl")));
  EXPECT_EQ(StrictPrf(got, gold).f1, 1.0);
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(Cli("--help"), 0);
  EXPECT_EQ(Cli("frobnicate"), 1);
  EXPECT_EQ(Cli("extract"), 1);
  EXPECT_EQ(Cli("extract -i /nonexistent/tables.jsonl -o /dev/null"), 2);
  const std::string kb = ::testing::TempDir() + "empty.kb.jsonl";
  WriteFileBytes(kb, SerializeKb(BuildKnowledgeBase({})));
  EXPECT_EQ(Cli("screen --kb '" + kb + "' --where 'density > 2 @ g/cm3'"), 0);
  EXPECT_EQ(Cli("screen --kb '" + kb + "' --where 'nonsense'"), 1);
  EXPECT_EQ(Cli("screen --kb /dev/null --where 'density > 2 @ g/cm3'"), 2);
}

}  // namespace
}  // namespace tabkb
