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

#ifndef TABKB_LABELS_H_
#define TABKB_LABELS_H_

#include <array>
#include <optional>
#include <string_view>

namespace tabkb {

// Header class codes. 0..3 are structural roles, 4..21 are the eighteen
// material properties in their fixed order.
enum class Label : int {
  kOther = 0,
  kConstituent = 1,
  kComposition = 2,
  kMaterialId = 3,
  kActivationEnergy = 4,
  kAnnealingPoint = 5,
  kCrystallizationTemperature = 6,
  kGlassTransitionTemperature = 7,
  kLiquidusTemperature = 8,
  kMeltingTemperature = 9,
  kSofteningPoint = 10,
  kThermalExpansionCoefficient = 11,
  kBulkModulus = 12,
  kDensity = 13,
  kFractureToughness = 14,
  kHardness = 15,
  kPoissonRatio = 16,
  kShearModulus = 17,
  kYoungsModulus = 18,
  kAbbeValue = 19,
  kRefractiveIndex = 20,
  kElectricalConductivity = 21,
};

inline constexpr int kNumClasses = 22;
inline constexpr int kFirstProperty = 4;
inline constexpr int kLastProperty = 21;
inline constexpr int kNumProperties = kLastProperty - kFirstProperty + 1;

constexpr bool IsValidLabel(int code) { return code >= 0 && code < kNumClasses; }
constexpr bool IsProperty(int code) {
  return code >= kFirstProperty && code <= kLastProperty;
}
// Constituent, composition and material-id roles.
constexpr bool IsCompositionRole(int code) { return code >= 1 && code <= 3; }

// Machine name of a label, e.g. "glass_transition_temperature".
std::string_view LabelKey(int code);
// Human readable name, e.g. "Glass transition temperature".
std::string_view LabelDisplayName(int code);
// Inverse of LabelKey; also accepts a few common short forms ("tg", "cte").
std::optional<int> LabelFromKey(std::string_view key);

}  // namespace tabkb

#endif  // TABKB_LABELS_H_
