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

#include "tabkb/distant_supervision.h"

#include <algorithm>
#include <random>

#include "gtest/gtest.h"
#include "synthetic.h"
#include "tabkb/labels.h"

namespace tabkb {
namespace {

constexpr int kTg = static_cast<int>(Label::kGlassTransitionTemperature);
constexpr int kDensity = static_cast<int>(Label::kDensity);

Table Column(const std::string& head, const std::vector<std::string>& values) {
  Table t;
  t.pii = "DS";
  t.cells.push_back({"Glass", head});
  for (size_t i = 0; i < values.size(); ++i) t.cells.push_back({"G" + std::to_string(i), values[i]});
  t.row_labels.assign(t.num_rows(), 0);
  t.col_labels.assign(2, 0);
  return t;
}

ReferenceDatabase Db(int property, const std::vector<double>& values, const std::string& unit) {
  ReferenceDatabase db;
  for (size_t i = 0; i < values.size(); ++i) {
    ReferenceRecord r;
    r.id = "R" + std::to_string(i);
    r.properties[property] = {values[i], unit};
    db.records.push_back(r);
  }
  return db;
}

TEST(AlignTableTest, TemperatureShift) {
  const Table t = Column("T", {"500", "520", "540"});
  const auto res = AlignTable(t, Db(kTg, {773, 793, 813}, "K"), {});
  ASSERT_TRUE(res.retained);
  EXPECT_EQ(res.transforms.at(kTg), Transform::kPlus273);
  EXPECT_EQ(res.col_labels[1], kTg);
  EXPECT_EQ(res.orientation, Axis::kCol);
  ASSERT_EQ(res.tuples.size(), 3u);
  EXPECT_EQ(res.tuples[0].unit, "degC");
  EXPECT_EQ(res.tuples[2].db_index, 2u);
  EXPECT_DOUBLE_EQ(res.tuples[1].observed, 520);
  const auto line = std::find_if(res.lines.begin(), res.lines.end(), [](const LineMatch& m) {
    return m.axis == Axis::kCol && m.index == 1;
  });
  ASSERT_NE(line, res.lines.end());
  EXPECT_DOUBLE_EQ(line->density(), 1.0);
}

TEST(AlignTableTest, DensityScale) {
  const Table t = Column("rho", {"2.5", "2.6"});
  const auto res = AlignTable(t, Db(kDensity, {2500, 2600}, "kg/m3"), {});
  ASSERT_TRUE(res.retained);
  EXPECT_EQ(res.transforms.at(kDensity), Transform::kTimes1000);
  EXPECT_EQ(res.col_labels[1], kDensity);
  EXPECT_EQ(res.tuples[0].unit, "g/cm3");
}

TEST(AlignTableTest, SparseMatchesAreRejected) {
  std::vector<std::string> values;
  for (int i = 0; i < 10; ++i) values.push_back(std::to_string(100000 + i * 1000));
  values[4] = "700";
  const Table t = Column("X", values);
  const auto res = AlignTable(t, Db(kTg, {700}, "K"), {});
  EXPECT_FALSE(res.retained);
  EXPECT_EQ(res.col_labels[1], 0);
  EXPECT_TRUE(res.tuples.empty());
}

TEST(AlignTableTest, TiesPreferIdentity) {
  const Table t = Column("rho", {"2.5"});
  const auto res = AlignTable(t, Db(kDensity, {2.5, 2500}, "g/cm3"), {});
  EXPECT_EQ(res.transforms.at(kDensity), Transform::kIdentity);
}

TEST(AlignTableTest, ExactMatchAtZeroAndTolerance) {
  EXPECT_TRUE(ValueMatches(0.0, 0.0, 1e-3));
  EXPECT_FALSE(ValueMatches(1e-9, 0.0, 1e-3));
  EXPECT_TRUE(ValueMatches(773.5, 773.15, 1e-3));
  EXPECT_FALSE(ValueMatches(775, 773.15, 1e-3));
}

TEST(AlignTableTest, ExistingLabelsAreKept) {
  Table t = Column("T", {"500", "520", "540"});
  t.col_labels[1] = static_cast<int>(Label::kSofteningPoint);
  const auto res = AlignTable(t, Db(kTg, {773, 793, 813}, "K"), {});
  EXPECT_EQ(res.col_labels[1], static_cast<int>(Label::kSofteningPoint));
  EXPECT_FALSE(res.retained);
}

TEST(AlignTableTest, RowOrientation) {
  Table t;
  t.pii = "ROW";
  t.cells = {{"Property", "G1", "G2", "G3"},
             {"Tg", "700", "710", "720"},
             {"Density", "2.5", "2.6", "2.7"}};
  t.row_labels.assign(3, 0);
  t.col_labels.assign(4, 0);
  ReferenceDatabase db;
  for (int i = 0; i < 3; ++i) {
    ReferenceRecord r;
    r.properties[kTg] = {700.0 + 10 * i, "K"};
    r.properties[kDensity] = {2.5 + 0.1 * i, "g/cm3"};
    db.records.push_back(r);
  }
  const auto res = AlignTable(t, db, {});
  EXPECT_EQ(res.orientation, Axis::kRow);
  EXPECT_EQ(res.row_labels, (std::vector<int>{0, kTg, kDensity}));
  EXPECT_EQ(res.col_labels, (std::vector<int>{0, 0, 0, 0}));
}

TEST(AlignTableTest, CompositionLines) {
  Table t;
  t.pii = "C";
  t.cells = {{"Glass", "SiO2 (mol%)", "Na2O (mol%)"}, {"A", "60", "40"}, {"B", "70.2", "29.8"}};
  t.row_labels.assign(3, 0);
  t.col_labels.assign(3, 0);
  ReferenceDatabase db;
  db.records.push_back({"a", {{"SiO2", 60}, {"Na2O", 40}}, {}});
  db.records.push_back({"b", {{"SiO2", 70}, {"Na2O", 30}}, {}});
  const auto res = AlignTable(t, db, {});
  EXPECT_EQ(res.col_labels, (std::vector<int>{0, 2, 2}));
}

TEST(AlignTableTest, TransformNeverLosesMatches) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 40; ++k) {
    auto planted = testing::MakePlantedTable(rng, k);
    ReferenceDatabase db;
    db.records = planted.records;
    const auto res = AlignTable(planted.table, db, {});
    for (const auto& [p, t] : res.transforms) {
      // Count matches under identity directly.
      int identity = 0, chosen = 0;
      for (const auto& row : planted.table.cells) {
        for (const auto& cell : row) {
          char* end = nullptr;
          const double v = std::strtod(cell.c_str(), &end);
          if (end == cell.c_str() || *end != '\0') continue;
          bool id_hit = false, t_hit = false;
          for (const auto& r : db.records) {
            auto it = r.properties.find(p);
            if (it == r.properties.end()) continue;
            id_hit |= ValueMatches(v, it->second.value, 1e-3);
            t_hit |= ValueMatches(ApplyTransform(t, v), it->second.value, 1e-3);
          }
          identity += id_hit;
          chosen += t_hit;
        }
      }
      EXPECT_GE(chosen, identity);
    }
  }
}

TEST(AlignTableTest, InvariantUnderDatabasePermutation) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    auto planted = testing::MakePlantedTable(rng, k);
    ReferenceDatabase db;
    db.records = planted.records;
    const auto a = AlignTable(planted.table, db, {});
    std::shuffle(db.records.begin(), db.records.end(), rng);
    const auto b = AlignTable(planted.table, db, {});
    EXPECT_EQ(a.row_labels, b.row_labels);
    EXPECT_EQ(a.col_labels, b.col_labels);
    EXPECT_EQ(a.transforms, b.transforms);
  }
}

TEST(AlignTableTest, SelfDatabaseGivesFullDensity) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 20; ++k) {
    auto planted = testing::MakePlantedTable(rng, k);
    ReferenceDatabase db;
    db.records = planted.records;
    const auto res = AlignTable(planted.table, db, {});
    for (size_t i = 0; i < planted.expected_labels.size(); ++i) {
      if (!IsProperty(planted.expected_labels[i])) continue;
      const auto line = std::find_if(res.lines.begin(), res.lines.end(), [&](const LineMatch& m) {
        return m.axis == planted.orientation && m.index == static_cast<int>(i);
      });
      ASSERT_NE(line, res.lines.end());
      EXPECT_DOUBLE_EQ(line->density(), 1.0) << planted.table.id() << " line " << i;
    }
  }
}

TEST(AlignTableTest, PlantedCorpusRecovered) {
  std::mt19937_64 rng(2026);
  std::vector<testing::PlantedTable> tables;
  ReferenceDatabase db;
  for (int k = 0; k < 50; ++k) {
    tables.push_back(testing::MakePlantedTable(rng, k));
    for (const auto& r : tables.back().records) db.records.push_back(r);
  }
  for (const auto& pt : tables) {
    const auto res = AlignTable(pt.table, db, {});
    EXPECT_EQ(res.orientation, pt.orientation) << pt.table.id();
    EXPECT_EQ(pt.orientation == Axis::kRow ? res.row_labels : res.col_labels, pt.expected_labels)
        << pt.table.id();
    for (const auto& [p, t] : pt.planted) {
      ASSERT_TRUE(res.transforms.count(p)) << pt.table.id();
      EXPECT_EQ(res.transforms.at(p), t) << pt.table.id() << " " << LabelKey(p);
    }
  }
}

TEST(ReferenceDatabaseTest, RoundTrip) {
  std::mt19937_64 rng(1);
  ReferenceDatabase db;
  db.records = testing::MakePlantedTable(rng, 0).records;
  db.records[0].composition = {{"SiO2", 60.5}};
  const auto back = ParseReferenceDatabase(SerializeReferenceDatabase(db));
  ASSERT_EQ(back.records.size(), db.records.size());
  EXPECT_EQ(back.records[0].composition, db.records[0].composition);
  EXPECT_EQ(SerializeReferenceDatabase(back), SerializeReferenceDatabase(db));
}

TEST(ReferenceDatabaseTest, Errors) {
  EXPECT_THROW(ParseReferenceDatabase("{\"composition\": {\"SiO2\": -1}}\n"), DatabaseError);
  EXPECT_THROW(ParseReferenceDatabase("{\"properties\": {\"colour\": {\"value\": 1}}}\n"),
               DatabaseError);
  EXPECT_THROW(ParseReferenceDatabase("{\"properties\": {\"density\": {\"unit\": \"K\"}}}\n"),
               DatabaseError);
  EXPECT_THROW(ParseReferenceDatabase("\n{oops\n"), DatabaseError);
  EXPECT_TRUE(ParseReferenceDatabase("").records.empty());
}

}  // namespace
}  // namespace tabkb
