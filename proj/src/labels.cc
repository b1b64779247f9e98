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

#include <string>

#include "tabkb/text.h"

namespace tabkb {
namespace {

struct LabelInfo {
  std::string_view key;
  std::string_view display;
};

constexpr std::array<LabelInfo, kNumClasses> kLabels = {{
    {"other", "Other"},
    {"constituent", "Constituent"},
    {"composition", "Composition"},
    {"material_id", "Material identifier"},
    {"activation_energy", "Activation energy"},
    {"annealing_point", "Annealing point"},
    {"crystallization_temperature", "Crystallization temperature"},
    {"glass_transition_temperature", "Glass transition temperature"},
    {"liquidus_temperature", "Liquidus temperature"},
    {"melting_temperature", "Melting temperature"},
    {"softening_point", "Softening point"},
    {"thermal_expansion_coefficient", "Thermal expansion coefficient"},
    {"bulk_modulus", "Bulk modulus"},
    {"density", "Density"},
    {"fracture_toughness", "Fracture toughness"},
    {"hardness", "Hardness"},
    {"poisson_ratio", "Poisson ratio"},
    {"shear_modulus", "Shear modulus"},
    {"youngs_modulus", "Young's modulus"},
    {"abbe_value", "Abbe value"},
    {"refractive_index", "Refractive index"},
    {"electrical_conductivity", "Electrical conductivity"},
}};

struct ShortForm {
  std::string_view alias;
  int code;
};

constexpr ShortForm kShortForms[] = {
    {"ea", 4},  {"tg", 7},  {"tx", 6},  {"tl", 8},  {"tm", 9},
    {"ts", 10}, {"cte", 11}, {"k", 12},  {"rho", 13}, {"kic", 14},
    {"hv", 15}, {"nu", 16}, {"g", 17},  {"e", 18},  {"abbe", 19},
    {"nd", 20}, {"n", 20},  {"sigma", 21}, {"poisson", 16},
};

}  // namespace

std::string_view LabelKey(int code) {
  if (!IsValidLabel(code)) return "invalid";
  return kLabels[code].key;
}

std::string_view LabelDisplayName(int code) {
  if (!IsValidLabel(code)) return "Invalid";
  return kLabels[code].display;
}

std::optional<int> LabelFromKey(std::string_view key) {
  std::string k = AsciiLower(Trim(key));
  for (char& c : k) {
    if (c == ' ' || c == '-') c = '_';
  }
  for (int i = 0; i < kNumClasses; ++i) {
    if (kLabels[i].key == k) return i;
  }
  if (k == "young_modulus" || k == "young's_modulus") return 18;
  if (k == "poissons_ratio" || k == "poisson's_ratio") return 16;
  for (const ShortForm& s : kShortForms) {
    if (s.alias == k) return s.code;
  }
  return std::nullopt;
}

}  // namespace tabkb
