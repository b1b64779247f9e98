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

#ifndef TABKB_UNITS_H_
#define TABKB_UNITS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "tabkb/config.h"

namespace tabkb {

// Canonical unit of `raw` for `property`. nullopt when `raw` is empty,
// "" when it is present but not in the property's dictionary.
std::optional<std::string> NormUnit(std::string_view raw, int property, const UnitLexicon& lex);

// False when the canonical unit contradicts the property: a unit on a
// unitless property, or one outside the allowed set and aliases. An absent
// unit is never a contradiction.
bool CheckNoncontrov(const std::optional<std::string>& canonical, int property,
                     const UnitLexicon& lex);

// Drops a leading scale factor such as "x10^-6" or "×10−7".
std::string StripScaleFactor(std::string_view s);

// Raw unit text found inside one heading cell ("Tg (K)", "E/GPa",
// "Density, g cm-3", "Hardness HV", ...). Only candidates whose key is in
// the lexicon vocabulary are returned.
std::optional<std::string> ExtractUnitCandidate(std::string_view cell, const UnitLexicon& lex);

// Unit text for `property` mentioned in a caption.
std::optional<std::string> UnitFromCaption(std::string_view caption, int property,
                                           const UnitLexicon& lex);

struct UnitResult {
  std::optional<std::string> unit;  // canonical, or nullopt
  std::string raw;                  // candidate text the unit came from
  std::string source;               // heading, caption, fallback, median_default, hardness
};

// Infers the unit of a property line (a full row or column including its
// heading cell). Heading cells are those before the first numeric cell.
UnitResult SetUnits(std::span<const std::string> line, int property, std::string_view caption,
                    const Config& cfg);

// Hardness refinement: scale keywords, per-scale ranges and the
// nanoindentation GPa fallback.
std::optional<std::string> PostProcessUnitExtras(const std::optional<std::string>& unit,
                                                 std::string_view heading,
                                                 std::string_view caption,
                                                 std::optional<double> value,
                                                 const UnitLexicon& lex);

struct Repaired {
  double value = 0.0;
  std::string unit;
};

// Resistivity reported on a conductivity axis: inverts the value and swaps
// in the direct unit. nullopt when the unit has no reciprocal entry or the
// value is zero.
std::optional<Repaired> ReciprocalRepair(double value, std::string_view unit, int property,
                                         const UnitLexicon& lex);

}  // namespace tabkb

#endif  // TABKB_UNITS_H_
