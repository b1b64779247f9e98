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

#include "tabkb/metrics.h"

#include <algorithm>
#include <random>

#include "gtest/gtest.h"
#include "tabkb/labels.h"

namespace tabkb {
namespace {

constexpr int kTg = static_cast<int>(Label::kGlassTransitionTemperature);
constexpr int kDensity = static_cast<int>(Label::kDensity);

ExtractedTuple T(int row, int property, double value, std::string unit) {
  ExtractedTuple t;
  t.entity = MakeEntityId("M", 0, row, 1, "G" + std::to_string(row), EntityKind::kProperty);
  t.property = property;
  t.value = value;
  t.unit = std::move(unit);
  return t;
}

std::vector<ExtractedTuple> Gold(int n) {
  std::vector<ExtractedTuple> g;
  for (int i = 0; i < n; ++i) {
    g.push_back(i % 2 ? T(i, kTg, 700 + i, "K") : T(i, kDensity, 2.5 + i * 0.01, "g/cm3"));
  }
  return g;
}

TEST(StrictPrfTest, Identity) {
  const auto g = Gold(20);
  const auto r = StrictPrf(g, g);
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 1.0);
  EXPECT_EQ(r.f1, 1.0);
  EXPECT_FALSE(r.undefined);
}

TEST(StrictPrfTest, HarmonicMean) {
  const auto r = MakePrf(12, 15, 20);
  EXPECT_DOUBLE_EQ(r.precision, 0.8);
  EXPECT_DOUBLE_EQ(r.recall, 0.6);
  EXPECT_NEAR(r.f1, 0.685714285714, 1e-12);
}

TEST(StrictPrfTest, WrongUnitIsIncorrect) {
  const std::vector<ExtractedTuple> gold = {T(1, kTg, 700, "K")};
  const std::vector<ExtractedTuple> pred = {T(1, kTg, 700, "degC")};
  EXPECT_EQ(StrictPrf(pred, gold).correct, 0);
}

TEST(StrictPrfTest, SixSignificantDigits) {
  const std::vector<ExtractedTuple> gold = {T(1, kTg, 700.0001, "K")};
  EXPECT_EQ(StrictPrf({T(1, kTg, 700.0, "K")}, gold).correct, 1);
  EXPECT_EQ(StrictPrf({T(1, kTg, 700.01, "K")}, gold).correct, 0);
  EXPECT_EQ(ValueKey(8.2e-6), ValueKey(8.2000001e-6));
  EXPECT_EQ(ValueKey(-0.0), ValueKey(0.0));
}

TEST(StrictPrfTest, ZeroDenominators) {
  const auto r = StrictPrf({}, {});
  EXPECT_TRUE(r.undefined);
  EXPECT_EQ(r.f1, 0.0);
  const auto p = StrictPrf({}, Gold(3));
  EXPECT_TRUE(p.undefined);
  EXPECT_EQ(p.recall, 0.0);
}

TEST(StrictPrfTest, DuplicatesMatchOnce) {
  const auto g = Gold(1);
  const std::vector<ExtractedTuple> pred = {g[0], g[0]};
  const auto r = StrictPrf(pred, g);
  EXPECT_EQ(r.correct, 1);
  EXPECT_DOUBLE_EQ(r.precision, 0.5);
}

TEST(StrictPrfTest, PropertiesOverRandomSets) {
  std::mt19937_64 rng(17);
  const auto universe = Gold(60);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<ExtractedTuple> a, b;
    for (const auto& t : universe) {
      if (rng() % 3 == 0) a.push_back(t);
      if (rng() % 2 == 0) b.push_back(t);
    }
    if (rng() % 4 == 0 && !a.empty()) a.push_back(a.front());
    const auto ab = StrictPrf(a, b);
    const auto ba = StrictPrf(b, a);
    EXPECT_EQ(ab.precision, ba.recall);
    EXPECT_EQ(ab.recall, ba.precision);
    for (double v : {ab.precision, ab.recall, ab.f1}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    const double m = std::min(ab.precision, ab.recall);
    EXPECT_LE(ab.f1, 2 * m / (1 + m) + 1e-12);
    EXPECT_EQ(ab.f1 == 0.0, ab.precision * ab.recall == 0.0);
  }
}

TEST(StrictPrfTest, ByProperty) {
  auto gold = Gold(10);
  auto pred = gold;
  pred[1].value += 1;  // a Tg miss
  const auto by = StrictPrfByProperty(pred, gold);
  EXPECT_EQ(by.at(kDensity).f1, 1.0);
  EXPECT_DOUBLE_EQ(by.at(kTg).precision, 0.8);
  EXPECT_EQ(by.at(0).correct, 9);
  const auto report = EvalReport(pred, gold);
  EXPECT_EQ(report["properties"].size(), 2u);
  EXPECT_EQ(report["overall"]["correct"], 9);
}

TEST(UnitAccuracyTest, WorkedExample) {
  std::vector<ExtractedTuple> gold, pred;
  for (int i = 0; i < 80; ++i) {
    gold.push_back(T(i, kTg, 700 + i, "K"));
    pred.push_back(T(i, kTg, 700 + i, i < 65 ? "K" : "degC"));
  }
  // Unmatched predictions stay out of the denominator.
  pred.push_back(T(500, kTg, 1, "K"));
  const auto ua = ComputeUnitAccuracy(pred, gold);
  EXPECT_EQ(ua.matched, 80);
  EXPECT_EQ(ua.correct, 65);
  ASSERT_TRUE(ua.accuracy);
  EXPECT_EQ(*ua.accuracy, 0.8125);
}

TEST(UnitAccuracyTest, AllCorrectAndEmpty) {
  const auto g = Gold(7);
  EXPECT_EQ(ComputeUnitAccuracy(g, g).accuracy, 1.0);
  EXPECT_FALSE(ComputeUnitAccuracy({}, g).accuracy.has_value());
}

}  // namespace
}  // namespace tabkb
