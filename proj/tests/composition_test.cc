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

#include "tabkb/composition.h"

#include <random>

#include "gtest/gtest.h"
#include "tabkb/labels.h"
#include "tabkb/numeric.h"

namespace tabkb {
namespace {

Table Make(std::vector<std::vector<std::string>> cells, std::string caption = "") {
  Table t;
  t.pii = "CMP";
  t.table_index = 1;
  t.caption = std::move(caption);
  t.cells = std::move(cells);
  t.row_labels.assign(t.num_rows(), 0);
  t.col_labels.assign(t.num_cols(), 0);
  return t;
}

// Rows of (SiO2, Na2O, CaO) scaled so that each row sums to `sum`.
Table McTable(double sum) {
  const double parts[3][3] = {{60, 30, 10}, {70, 20, 10}, {65, 25, 10}};
  std::vector<std::vector<std::string>> cells = {
      {"Glass", "SiO2 (mol%)", "Na2O (mol%)", "CaO (mol%)"}};
  for (int r = 0; r < 3; ++r) {
    std::vector<std::string> row = {"G" + std::to_string(r + 1)};
    for (int c = 0; c < 3; ++c) row.push_back(FormatDouble(parts[r][c] * sum / 100.0));
    cells.push_back(row);
  }
  return Make(cells);
}

TEST(CompoundLexiconTest, DefaultHasOxides) {
  const auto& lex = DefaultCompounds();
  EXPECT_GT(lex.size(), 50u);
  EXPECT_EQ(lex.Lookup("silica"), "SiO2");
  EXPECT_EQ(lex.Lookup("Al2O3"), "Al2O3");
  EXPECT_EQ(lex.Lookup("unobtainium"), std::nullopt);
}

TEST(CompoundLexiconTest, ParseErrors) {
  EXPECT_THROW(ParseCompoundLexicon("notaformula\n"), CompositionError);
  const auto lex = ParseCompoundLexicon("# comment\nGa2S3\tgallium sulfide\n");
  EXPECT_EQ(lex.Lookup("Gallium Sulfide"), "Ga2S3");
}

TEST(FormulaTest, Grammar) {
  for (const char* f : {"SiO2", "Na2O", "Fe2O3", "(NH4)2SO4", "Li2O-SiO2", "Er", "Na₂O",
                        "2SiO2", "Ca3(PO4)2", "B2O3·H2O"}) {
    EXPECT_TRUE(IsChemicalFormula(f)) << f;
  }
  for (const char* f : {"Sample", "Tg", "glass", "", "Xx2", "SiO2)", "G1", "Density"}) {
    EXPECT_FALSE(IsChemicalFormula(f)) << f;
  }
}

TEST(DetectConstituentsTest, Examples) {
  const Config& cfg = DefaultConfig();
  EXPECT_EQ(DetectConstituents("SiO2 (mol%)", cfg), (Constituent{"mol%", "SiO2"}));
  EXPECT_TRUE(DetectConstituents("error (%)", cfg).empty());
  EXPECT_TRUE(DetectConstituents("Sample name", cfg).empty());
  EXPECT_EQ(DetectConstituents("Al2O3 [wt.%]", cfg), (Constituent{"wt%", "Al2O3"}));
  EXPECT_EQ(DetectConstituents("at.% Ge", cfg), (Constituent{"at%", "Ge"}));
  EXPECT_EQ(DetectConstituents("silica, mol %", cfg), (Constituent{"mol%", "SiO2"}));
  EXPECT_EQ(DetectConstituents("Na2O", cfg), (Constituent{"", "Na2O"}));
  EXPECT_TRUE(DetectConstituents("Na2O/SiO2 ratio", cfg).empty());
}

TEST(RelabelTest, CompositionColumnMedian) {
  const auto res = RelabelCompositionTable(McTable(100), DefaultConfig());
  EXPECT_TRUE(res.comp_table);
  EXPECT_EQ(res.orientation, Axis::kCol);
  EXPECT_EQ(res.col_labels, (std::vector<int>{0, 2, 2, 2}));
  EXPECT_EQ(res.row_labels, (std::vector<int>{0, 1, 1, 1}));
  EXPECT_EQ(res.constituents.at(1), (Constituent{"mol%", "SiO2"}));
}

TEST(RelabelTest, SumWindowExamples) {
  const Config& cfg = DefaultConfig();
  auto full = RelabelCompositionTable(McTable(100.2), cfg);
  EXPECT_EQ(full.sum_less_100, 0);
  EXPECT_NEAR(*full.sum_median, 100.2, 1e-9);
  EXPECT_EQ(RelabelCompositionTable(McTable(1.001), cfg).sum_less_100, 0);
  EXPECT_EQ(RelabelCompositionTable(McTable(72), cfg).sum_less_100, 1);
}

TEST(RelabelTest, SumWindowIsScaleConsistent) {
  for (double s : {0.97, 1.0, 1.04, 0.5, 0.8, 1.2}) {
    EXPECT_EQ(InSumWindow(s), InSumWindow(s * 100)) << s;
  }
  EXPECT_FALSE(InSumWindow(0.95));
  EXPECT_FALSE(InSumWindow(105));
}

TEST(RelabelTest, SmallMedianIsNotComposition) {
  auto t = Make({{"Glass", "Er (mol%)"}, {"A", "0.05"}, {"B", "0.1"}});
  EXPECT_FALSE(RelabelCompositionTable(t, DefaultConfig()).comp_table);
}

TEST(RelabelTest, RowOrientation) {
  auto t = Make({{"Oxide", "G1", "G2"},
                 {"SiO2 (wt%)", "70", "72"},
                 {"Na2O (wt%)", "30", "28"}});
  const auto res = RelabelCompositionTable(t, DefaultConfig());
  EXPECT_EQ(res.orientation, Axis::kRow);
  EXPECT_EQ(res.row_labels, (std::vector<int>{0, 2, 2}));
  EXPECT_EQ(res.col_labels, (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(res.sum_less_100, 0);
  EXPECT_EQ(res.edges.size(), 4u);
  EXPECT_EQ(res.edges.front(), (CompositionEdge{1, 1, Axis::kRow}));
}

TEST(RelabelTest, CaptionUnitForKnownCompounds) {
  auto t = Make({{"Glass", "SiO2", "B2O3", "Tg (K)"}, {"A", "80", "20", "800"},
                 {"B", "75", "25", "790"}},
                "Composition (mol%) and properties");
  const auto res = RelabelCompositionTable(t, DefaultConfig());
  EXPECT_EQ(res.col_labels, (std::vector<int>{0, 2, 2, 0}));
  EXPECT_EQ(res.constituents.at(2).unit, "mol%");
}

TEST(RelabelTest, NeverChangesNonZeroLabels) {
  auto t = McTable(100);
  t.col_labels[2] = static_cast<int>(Label::kDensity);
  t.col_labels[0] = 3;
  t.row_labels[2] = static_cast<int>(Label::kGlassTransitionTemperature);
  const auto res = RelabelCompositionTable(t, DefaultConfig());
  EXPECT_EQ(res.col_labels, (std::vector<int>{3, 2, static_cast<int>(Label::kDensity), 2}));
  EXPECT_EQ(res.row_labels[2], static_cast<int>(Label::kGlassTransitionTemperature));
  EXPECT_EQ(res.archived_col_labels, t.col_labels);
}

TEST(RelabelTest, PlaceholdersAndEmptyLines) {
  auto t = Make({{"Glass", "SiO2 (mol%)", "Na2O (mol%)", "PbO (mol%)"},
                 {"A", "70", "30", "-"},
                 {"note", "", "", ""},
                 {"B", "60", "20", "20"}});
  const auto res = RelabelCompositionTable(t, DefaultConfig());
  EXPECT_EQ(res.row_labels, (std::vector<int>{0, 1, 0, 1}));
  EXPECT_EQ(res.sum_less_100, 0);
  const auto tuples = ExtractCompositions(t, res, DefaultConfig());
  EXPECT_EQ(tuples.size(), 5u);
}

TEST(RelabelTest, RaggedGridThrows) {
  auto t = McTable(100);
  t.cells[1].pop_back();
  EXPECT_THROW(RelabelCompositionTable(t, DefaultConfig()), CompositionError);
}

TEST(EdgeListTest, MatchesEnumerationOnRandomGrids) {
  std::mt19937_64 rng(11);
  const char* oxides[] = {"SiO2", "B2O3", "Al2O3", "Na2O", "K2O", "CaO", "MgO"};
  for (int trial = 0; trial < 100; ++trial) {
    const int nc = 1 + static_cast<int>(rng() % 6);
    const int nr = 1 + static_cast<int>(rng() % 8);
    std::vector<std::vector<std::string>> cells = {{"Glass"}};
    for (int c = 0; c < nc; ++c) cells[0].push_back(std::string(oxides[c]) + " (mol%)");
    for (int r = 0; r < nr; ++r) {
      std::vector<std::string> row = {"S" + std::to_string(r)};
      for (int c = 0; c < nc; ++c) row.push_back(std::to_string(1 + rng() % 50));
      cells.push_back(row);
    }
    auto t = Make(cells);
    const auto res = RelabelCompositionTable(t, DefaultConfig());
    ASSERT_TRUE(res.comp_table);
    EXPECT_EQ(res.edges, EnumerateEdges(res.row_labels, res.col_labels));
    EXPECT_EQ(res.edges.size(), static_cast<size_t>(nr * nc));
  }
}

TEST(ExtractCompositionsTest, EntityIdsAndGid) {
  auto t = McTable(100);
  t.col_labels[0] = 3;
  const auto res = RelabelCompositionTable(t, DefaultConfig());
  const auto tuples = ExtractCompositions(t, res, DefaultConfig());
  ASSERT_EQ(tuples.size(), 9u);
  EXPECT_EQ(tuples[0].entity.ToString(), "CMP_1_1_1_0_G1");
  EXPECT_EQ(tuples[0].constituent, "SiO2");
  EXPECT_EQ(tuples[0].unit, "mol%");
  EXPECT_DOUBLE_EQ(tuples[0].value, 60);
  const auto j = CompositionTupleToJson(tuples[4]);
  EXPECT_EQ(CompositionTupleFromJson(nlohmann::json::parse(j.dump())), tuples[4]);
}

TEST(RelabelTablesTest, UpdatesDatasetInPlace) {
  std::vector<Table> ds = {McTable(100), Make({{"Glass", "Tg (K)"}, {"A", "700"}})};
  const auto res = RelabelCompositionTables(ds, DefaultConfig());
  ASSERT_EQ(res.size(), 2u);
  EXPECT_TRUE(ds[0].comp_table);
  EXPECT_EQ(ds[0].sum_less_100, 0);
  EXPECT_FALSE(ds[1].comp_table);
  EXPECT_EQ(ds[1].col_labels, (std::vector<int>{0, 0}));
}

}  // namespace
}  // namespace tabkb
