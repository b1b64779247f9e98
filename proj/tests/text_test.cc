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

#include "tabkb/text.h"

#include <gtest/gtest.h>

namespace tabkb {
namespace {

TEST(Text, NormalizeCompatFoldsMinusAndOhm) {
  EXPECT_EQ(NormalizeCompat("10−6"), "10-6");
  EXPECT_EQ(NormalizeCompat("Ω"), "Ω");
  EXPECT_EQ(NormalizeCompat("cm³"), "cm3");
  EXPECT_EQ(NormalizeCompat("℃"), "°C");
  EXPECT_EQ(NormalizeCompat("plain"), "plain");
}

TEST(Text, NormalizeForMatchCollapsesSpace) {
  EXPECT_EQ(NormalizeForMatch("  Glass   Transition\tTemp "), "glass transition temp");
}

TEST(Text, ContainsTokenRespectsWordBoundaries) {
  EXPECT_TRUE(ContainsToken("tg (k)", "tg"));
  EXPECT_FALSE(ContainsToken("tgx", "tg"));
  EXPECT_TRUE(ContainsToken("poisson's ratio", "poisson"));
  EXPECT_FALSE(ContainsToken("anything", ""));
}

TEST(Text, Brackets) {
  EXPECT_EQ(LastBracketed("Density (g/cm3)"), "g/cm3");
  EXPECT_EQ(LastBracketed("CTE (×10 (-6)/K)"), "×10 (-6)/K");
  EXPECT_EQ(LastBracketed("no brackets"), "");
  EXPECT_EQ(RemoveBracketed("Tg (K) [12]"), "Tg");
}

TEST(Text, Utf8RoundTrip) {
  const std::string s = "ρ °C − \U0001F600";
  EXPECT_EQ(EncodeUtf8(DecodeUtf8(s)), s);
}

TEST(Text, SplitKeepsEmptyFields) {
  const auto parts = SplitOn("a,,b", ',');
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[1], "");
}

}  // namespace
}  // namespace tabkb
