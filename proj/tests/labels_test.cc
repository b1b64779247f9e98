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

#include "tabkb/labels.h"

#include <gtest/gtest.h>

#include <set>
#include <string>

namespace tabkb {
namespace {

TEST(Labels, PropertyCodesFollowTableOrder) {
  EXPECT_EQ(LabelKey(4), "activation_energy");
  EXPECT_EQ(LabelKey(7), "glass_transition_temperature");
  EXPECT_EQ(LabelKey(9), "melting_temperature");
  EXPECT_EQ(LabelKey(13), "density");
  EXPECT_EQ(LabelKey(20), "refractive_index");
  EXPECT_EQ(LabelKey(21), "electrical_conductivity");
  EXPECT_EQ(kNumProperties, 18);
}

TEST(Labels, KeysRoundTrip) {
  std::set<std::string> seen;
  for (int code = 0; code < kNumClasses; ++code) {
    const std::string key(LabelKey(code));
    EXPECT_TRUE(seen.insert(key).second) << key;
    EXPECT_EQ(LabelFromKey(key), code);
  }
}

TEST(Labels, KeyLookupIsForgiving) {
  EXPECT_EQ(LabelFromKey("Glass Transition Temperature"), 7);
  EXPECT_EQ(LabelFromKey("youngs-modulus"), 18);
  EXPECT_EQ(LabelFromKey("tg"), 7);
  EXPECT_FALSE(LabelFromKey("viscosity").has_value());
}

TEST(Labels, Predicates) {
  EXPECT_FALSE(IsValidLabel(-1));
  EXPECT_FALSE(IsValidLabel(22));
  EXPECT_TRUE(IsCompositionRole(3));
  EXPECT_FALSE(IsProperty(3));
  EXPECT_TRUE(IsProperty(21));
}

}  // namespace
}  // namespace tabkb
