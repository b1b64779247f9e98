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

#include "tabkb/config.h"

#include <gtest/gtest.h>

#include <algorithm>

namespace tabkb {
namespace {

TEST(Config, DefaultLoads) {
  const Config& cfg = DefaultConfig();
  EXPECT_EQ(cfg.property_order.size(), static_cast<size_t>(kNumProperties));
  EXPECT_DOUBLE_EQ(cfg.train.lambda, 50.0);
  EXPECT_DOUBLE_EQ(cfg.train.alpha_threshold, 0.7);
  EXPECT_DOUBLE_EQ(cfg.augment.a, 10.0);
  EXPECT_DOUBLE_EQ(cfg.augment.alpha, 0.65);
}

TEST(Config, FriendsAreSymmetric) {
  const Config& cfg = DefaultConfig();
  for (int p = kFirstProperty; p <= kLastProperty; ++p) {
    for (int f : cfg.Rules(p).friends) {
      const auto& back = cfg.Rules(f).friends;
      EXPECT_NE(std::find(back.begin(), back.end(), p), back.end()) << p << " " << f;
    }
  }
  const auto& abbe = cfg.Rules(19).friends;
  EXPECT_NE(std::find(abbe.begin(), abbe.end(), 20), abbe.end());
  const auto& kic = cfg.Rules(14).friends;
  EXPECT_NE(std::find(kic.begin(), kic.end(), 18), kic.end());
}

TEST(Config, CanonicalUnitsAreAllowed) {
  const Config& cfg = DefaultConfig();
  for (int p = kFirstProperty; p <= kLastProperty; ++p) {
    const PropertyUnits& u = cfg.units.For(p);
    for (const auto& [key, canonical] : u.surface) {
      const bool ok = std::count(u.allowed.begin(), u.allowed.end(), canonical) +
                          std::count(u.aliases.begin(), u.aliases.end(), canonical) > 0;
      EXPECT_TRUE(ok) << LabelKey(p) << " " << canonical;
    }
    if (u.unitless) EXPECT_TRUE(u.surface.empty());
  }
}

TEST(Config, ValueRangeFallsBackToProperty) {
  const Config& cfg = DefaultConfig();
  EXPECT_DOUBLE_EQ(cfg.ValueRange(13, "g/cm3")->max, 25.0);
  EXPECT_DOUBLE_EQ(cfg.ValueRange(13, "")->max, 25000.0);
  EXPECT_DOUBLE_EQ(cfg.ValueRange(16, "")->min, -1.0);
  EXPECT_DOUBLE_EQ(cfg.ValueRange(20, "")->min, 1.0);
  EXPECT_TRUE(cfg.IsInvalidUnit(19, "GPa"));
}

TEST(Config, UnitKeyFolds) {
  EXPECT_EQ(UnitKey("g·cm−3"), "gcm3");
  EXPECT_EQ(UnitKey("g/cm³"), "gcm3");
  EXPECT_EQ(UnitKey("Ω−1 cm−1"), "ohm1cm1");
  EXPECT_EQ(UnitKey("µm"), "um");
}

TEST(Config, RejectsBadDocuments) {
  EXPECT_THROW(ParseConfig("not json"), ConfigError);
  EXPECT_THROW(ParseConfig("{\"properties\": []}"), ConfigError);
  EXPECT_THROW(ParseConfig("[]"), ConfigError);
}

}  // namespace
}  // namespace tabkb
