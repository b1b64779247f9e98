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

#ifndef TABKB_CONFIG_H_
#define TABKB_CONFIG_H_

#include <array>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlohmann/json.hpp"
#include "tabkb/labels.h"

namespace tabkb {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Range {
  double min = 0.0;
  double max = 0.0;
  bool Contains(double v) const { return v >= min && v <= max; }
};

// Regex kept next to its source text for audit logs and error messages.
struct Pattern {
  std::string source;
  std::regex re;
};

struct MedianDefault {
  Range median;
  std::string unit;
};

// Unit dictionaries for one property.
struct PropertyUnits {
  bool unitless = false;
  // Normalized surface key (see UnitKey) -> canonical spelling.
  std::map<std::string, std::string> surface;
  // Surface forms exactly as written in the config, for conformance runs.
  std::vector<std::pair<std::string, std::string>> surface_forms;
  std::vector<std::string> allowed;
  std::vector<std::string> aliases;
  std::vector<Pattern> fallback_patterns;
  std::vector<MedianDefault> median_defaults;
  // Canonical reciprocal unit -> canonical direct unit (resistivity on a
  // conductivity axis).
  std::map<std::string, std::string> reciprocal;
};

struct HardnessScale {
  std::string unit;
  std::vector<std::string> keywords;
};

struct UnitLexicon {
  std::array<PropertyUnits, kNumClasses> properties;
  std::vector<HardnessScale> hardness_scales;
  std::map<std::string, Range> hardness_ranges;
  std::vector<std::string> hardness_spurious;
  std::vector<std::string> hardness_text_keywords;
  Range nanoindentation{0.1, 5.0};
  std::vector<std::string> preventive_keys;
  // Union of every surface key of every property.
  std::set<std::string> vocabulary;

  const PropertyUnits& For(int property) const { return properties.at(property); }
};

// Rule dictionaries for one property label (4..21).
struct PropertyRules {
  int code = 0;
  std::vector<std::string> canonical_phrases;  // normalized lowercase
  std::vector<std::string> symbol_aliases;     // normalized lowercase
  Range value_range;
  std::vector<std::string> caption_keywords;
  std::vector<std::string> disqualify_tokens;
  int threshold = 2;
  std::vector<int> friends;
  std::optional<Range> median_range;
  std::vector<std::string> ambiguous_headings;
  std::vector<std::string> overload_headings;
  std::vector<Pattern> header_patterns;
  std::optional<Pattern> value_fix;
};

struct ContextRule {
  int property = 0;
  std::optional<Pattern> heading;
  std::vector<std::string> caption_any;
  std::vector<std::string> caption_none;
  std::vector<std::string> unit_in;
};

struct RangeRule {
  int property = 0;
  std::optional<std::string> unit;  // nullopt: property-only fallback
  Range range;
};

struct DistantSupervisionConfig {
  double default_tolerance = 1e-3;
  std::map<int, double> tolerance;
  double composition_abs_tolerance = 0.5;
  double min_density = 0.30;
};

struct AugmentConfig {
  double a = 10.0;
  double alpha = 0.65;
};

struct CompositionConfig {
  std::vector<std::string> exclusion_tokens;
  std::vector<std::string> placeholders;
  double median_threshold = 0.1;
};

struct TrainDefaults {
  double lambda = 50.0;
  double learning_rate = 0.05;
  int epochs = 200;
  double dropout = 0.2;
  int hidden1 = 64;
  int hidden2 = 32;
  int heads = 4;
  unsigned long long seed = 7;
  double alpha_threshold = 0.7;
  double clip_norm = 5.0;
  int embed_dim = 64;
  int positional_dim = 8;
};

struct Config {
  // Indexed by label code; only 4..21 are populated.
  std::array<PropertyRules, kNumClasses> properties;
  // Property iteration order for direct matching and annotation.
  std::vector<int> property_order;
  std::vector<ContextRule> context_rules;
  std::vector<RangeRule> value_ranges;
  std::vector<std::pair<int, std::string>> invalid_units;
  std::vector<std::string> composition_unit_tokens;
  std::vector<std::string> gid_phrases;
  UnitLexicon units;
  DistantSupervisionConfig distant;
  AugmentConfig augment;
  CompositionConfig composition;
  TrainDefaults train;
  // Raw bytes the config was parsed from; hashed into run manifests.
  std::string source;

  const PropertyRules& Rules(int code) const { return properties.at(code); }
  // R_prop lookup: (property, unit) first, then the property-only range.
  std::optional<Range> ValueRange(int property, std::string_view unit) const;
  bool IsInvalidUnit(int property, std::string_view unit) const;
};

// Parses a config document. Throws ConfigError on schema violations.
Config ParseConfig(std::string_view json_text);
Config LoadConfig(const std::string& path);
// The shipped default (data/config.json, embedded at build time).
const Config& DefaultConfig();
std::string_view DefaultConfigText();

// Normalized unit lookup key: NFKC, ohm/micro folded to ASCII, lowercase,
// and everything except [a-z0-9] dropped. "g·cm^-3" and "g/cm3" share
// the key "gcm3".
std::string UnitKey(std::string_view unit);

}  // namespace tabkb

#endif  // TABKB_CONFIG_H_
