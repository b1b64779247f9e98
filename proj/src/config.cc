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

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tabkb/text.h"

namespace tabkb {

extern const char kEmbeddedDefaultConfig[];

namespace {

using nlohmann::json;

int PropertyCode(const json& v, std::string_view where) {
  if (!v.is_string()) throw ConfigError(std::string(where) + ": property key must be a string");
  const auto code = LabelFromKey(v.get<std::string>());
  if (!code || !IsProperty(*code)) {
    throw ConfigError(std::string(where) + ": unknown property '" + v.get<std::string>() + "'");
  }
  return *code;
}

Range ReadRange(const json& v, std::string_view where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(std::string(where) + ": range must be [min, max]");
  }
  Range r{v[0].get<double>(), v[1].get<double>()};
  if (r.min > r.max) throw ConfigError(std::string(where) + ": range min exceeds max");
  return r;
}

std::vector<std::string> ReadStrings(const json& obj, const char* key, bool normalize) {
  std::vector<std::string> out;
  if (!obj.contains(key)) return out;
  const json& v = obj.at(key);
  if (!v.is_array()) throw ConfigError(std::string(key) + " must be an array of strings");
  for (const auto& s : v) {
    if (!s.is_string()) throw ConfigError(std::string(key) + " must be an array of strings");
    out.push_back(normalize ? NormalizeForMatch(s.get<std::string>()) : s.get<std::string>());
  }
  return out;
}

Pattern Compile(const std::string& source, std::string_view where) {
  try {
    return Pattern{source, std::regex(source, std::regex::ECMAScript)};
  } catch (const std::regex_error& e) {
    throw ConfigError(std::string(where) + ": bad pattern '" + source + "': " + e.what());
  }
}

void ReadUnits(const json& u, PropertyUnits& out, std::string_view where) {
  out.unitless = u.value("unitless", false);
  out.allowed = ReadStrings(u, "allowed", false);
  out.aliases = ReadStrings(u, "aliases", false);
  if (u.contains("surface")) {
    for (const auto& [form, canonical] : u.at("surface").items()) {
      if (!canonical.is_string()) {
        throw ConfigError(std::string(where) + ": surface canonical must be a string");
      }
      const std::string key = UnitKey(form);
      if (key.empty()) {
        throw ConfigError(std::string(where) + ": surface form '" + form + "' has an empty key");
      }
      out.surface[key] = canonical.get<std::string>();
      out.surface_forms.emplace_back(form, canonical.get<std::string>());
    }
  }
  for (const auto& src : ReadStrings(u, "fallback", false)) {
    out.fallback_patterns.push_back(Compile(src, where));
  }
  if (u.contains("median_defaults")) {
    for (const auto& d : u.at("median_defaults")) {
      if (!d.is_array() || d.size() != 3 || !d[2].is_string()) {
        throw ConfigError(std::string(where) + ": median default must be [lo, hi, unit]");
      }
      out.median_defaults.push_back(
          MedianDefault{ReadRange(json::array({d[0], d[1]}), where), d[2].get<std::string>()});
    }
  }
  if (u.contains("reciprocal")) {
    for (const auto& [from, to] : u.at("reciprocal").items()) {
      out.reciprocal[from] = to.get<std::string>();
    }
  }
  for (const auto& [key, canonical] : out.surface) {
    const bool known =
        std::find(out.allowed.begin(), out.allowed.end(), canonical) != out.allowed.end() ||
        std::find(out.aliases.begin(), out.aliases.end(), canonical) != out.aliases.end();
    if (!known) {
      throw ConfigError(std::string(where) + ": canonical unit '" + canonical +
                        "' is neither allowed nor an alias");
    }
  }
}

}  // namespace

std::string UnitKey(std::string_view unit) {
  const std::u32string cps = DecodeUtf8(NormalizeCompat(unit));
  std::string out;
  for (char32_t c : cps) {
    if (c == 0x03A9 || c == 0x03C9) {
      out += "ohm";
    } else if (c == 0x03BC || c == 0x00B5) {
      out += 'u';
    } else if (c >= 'A' && c <= 'Z') {
      out += static_cast<char>(c - 'A' + 'a');
    } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      out += static_cast<char>(c);
    }
  }
  return out;
}

std::optional<Range> Config::ValueRange(int property, std::string_view unit) const {
  const RangeRule* fallback = nullptr;
  for (const auto& rule : value_ranges) {
    if (rule.property != property) continue;
    if (!rule.unit) {
      if (fallback == nullptr) fallback = &rule;
    } else if (!unit.empty() && *rule.unit == unit) {
      return rule.range;
    }
  }
  if (fallback != nullptr) return fallback->range;
  return std::nullopt;
}

bool Config::IsInvalidUnit(int property, std::string_view unit) const {
  for (const auto& [p, u] : invalid_units) {
    if (p == property && u == unit) return true;
  }
  return false;
}

Config ParseConfig(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config root must be an object");

  Config cfg;
  cfg.source.assign(json_text);
  try {
    std::map<std::string, json> groups;
    if (doc.contains("unit_groups")) {
      for (const auto& [name, g] : doc.at("unit_groups").items()) groups[name] = g;
    }

    std::vector<std::vector<std::string>> friend_keys(kNumClasses);
    for (const auto& p : doc.at("properties")) {
      const int code = PropertyCode(p.at("key"), "properties");
      const std::string where = "property " + std::string(LabelKey(code));
      if (std::find(cfg.property_order.begin(), cfg.property_order.end(), code) !=
          cfg.property_order.end()) {
        throw ConfigError(where + ": listed twice");
      }
      cfg.property_order.push_back(code);
      PropertyRules& r = cfg.properties[code];
      r.code = code;
      r.canonical_phrases = ReadStrings(p, "phrases", true);
      r.symbol_aliases = ReadStrings(p, "symbols", true);
      r.value_range = ReadRange(p.at("range"), where);
      r.caption_keywords = ReadStrings(p, "caption_keywords", true);
      r.disqualify_tokens = ReadStrings(p, "disqualify", true);
      r.threshold = p.value("threshold", 2);
      friend_keys[code] = ReadStrings(p, "friends", false);
      if (p.contains("median_range")) r.median_range = ReadRange(p.at("median_range"), where);
      r.ambiguous_headings = ReadStrings(p, "ambiguous", true);
      r.overload_headings = ReadStrings(p, "overloaded", true);
      for (const auto& src : ReadStrings(p, "patterns", false)) {
        r.header_patterns.push_back(Compile(src, where));
      }
      if (p.contains("value_fix")) r.value_fix = Compile(p.at("value_fix").get<std::string>(), where);

      PropertyUnits& units = cfg.units.properties[code];
      const json& u = p.contains("units") ? p.at("units") : json::object();
      if (u.contains("group")) {
        const std::string g = u.at("group").get<std::string>();
        if (!groups.count(g)) throw ConfigError(where + ": unknown unit group '" + g + "'");
        ReadUnits(groups[g], units, where);
      } else {
        ReadUnits(u, units, where);
      }
      for (const auto& [key, canonical] : units.surface) cfg.units.vocabulary.insert(key);
    }
    for (int code = kFirstProperty; code <= kLastProperty; ++code) {
      if (cfg.properties[code].code != code) {
        throw ConfigError("property '" + std::string(LabelKey(code)) + "' missing from config");
      }
    }
    // Friendship is symmetric.
    for (int code = kFirstProperty; code <= kLastProperty; ++code) {
      for (const auto& key : friend_keys[code]) {
        const int other = PropertyCode(json(key), "friends");
        auto add = [](std::vector<int>& v, int x) {
          if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
        };
        if (other == code) continue;
        add(cfg.properties[code].friends, other);
        add(cfg.properties[other].friends, code);
      }
    }
    for (auto& r : cfg.properties) std::sort(r.friends.begin(), r.friends.end());

    if (doc.contains("context_rules")) {
      for (const auto& c : doc.at("context_rules")) {
        ContextRule rule;
        rule.property = PropertyCode(c.at("property"), "context_rules");
        if (c.contains("heading")) {
          rule.heading = Compile(c.at("heading").get<std::string>(), "context_rules");
        }
        rule.caption_any = ReadStrings(c, "caption_any", true);
        rule.caption_none = ReadStrings(c, "caption_none", true);
        rule.unit_in = ReadStrings(c, "unit_in", false);
        cfg.context_rules.push_back(std::move(rule));
      }
    }
    if (doc.contains("value_ranges")) {
      for (const auto& v : doc.at("value_ranges")) {
        RangeRule rule;
        rule.property = PropertyCode(v.at("property"), "value_ranges");
        if (v.contains("unit") && !v.at("unit").is_null()) rule.unit = v.at("unit").get<std::string>();
        rule.range = ReadRange(v.at("range"), "value_ranges");
        cfg.value_ranges.push_back(std::move(rule));
      }
    }
    if (doc.contains("invalid_units")) {
      for (const auto& v : doc.at("invalid_units")) {
        if (!v.is_array() || v.size() != 2) throw ConfigError("invalid_units entries are [property, unit]");
        cfg.invalid_units.emplace_back(PropertyCode(v[0], "invalid_units"), v[1].get<std::string>());
      }
    }
    cfg.composition_unit_tokens = ReadStrings(doc, "composition_unit_tokens", true);
    cfg.gid_phrases = ReadStrings(doc, "gid_phrases", true);

    if (doc.contains("hardness")) {
      const json& h = doc.at("hardness");
      for (const auto& s : h.at("scales")) {
        cfg.units.hardness_scales.push_back(
            HardnessScale{s.at("unit").get<std::string>(), ReadStrings(s, "keywords", true)});
      }
      for (const auto& [unit, range] : h.at("ranges").items()) {
        cfg.units.hardness_ranges[unit] = ReadRange(range, "hardness.ranges");
      }
      cfg.units.hardness_spurious = ReadStrings(h, "spurious", false);
      cfg.units.hardness_text_keywords = ReadStrings(h, "text_keywords", true);
      if (h.contains("nanoindentation")) {
        cfg.units.nanoindentation = ReadRange(h.at("nanoindentation"), "hardness.nanoindentation");
      }
    }
    for (const auto& s : ReadStrings(doc, "preventive_units", false)) {
      cfg.units.preventive_keys.push_back(UnitKey(s));
    }

    if (doc.contains("distant_supervision")) {
      const json& d = doc.at("distant_supervision");
      cfg.distant.default_tolerance = d.value("default_tolerance", cfg.distant.default_tolerance);
      cfg.distant.composition_abs_tolerance =
          d.value("composition_abs_tolerance", cfg.distant.composition_abs_tolerance);
      cfg.distant.min_density = d.value("min_density", cfg.distant.min_density);
      if (d.contains("tolerance")) {
        for (const auto& [key, tol] : d.at("tolerance").items()) {
          cfg.distant.tolerance[PropertyCode(json(key), "distant_supervision")] = tol.get<double>();
        }
      }
    }
    if (doc.contains("augment")) {
      const json& a = doc.at("augment");
      cfg.augment.a = a.value("a", cfg.augment.a);
      cfg.augment.alpha = a.value("alpha", cfg.augment.alpha);
    }
    if (doc.contains("composition")) {
      const json& c = doc.at("composition");
      cfg.composition.exclusion_tokens = ReadStrings(c, "exclusion_tokens", true);
      cfg.composition.placeholders = ReadStrings(c, "placeholders", true);
      cfg.composition.median_threshold = c.value("median_threshold", cfg.composition.median_threshold);
    }
    if (doc.contains("train")) {
      const json& t = doc.at("train");
      TrainDefaults& d = cfg.train;
      d.lambda = t.value("lambda", d.lambda);
      d.learning_rate = t.value("learning_rate", d.learning_rate);
      d.epochs = t.value("epochs", d.epochs);
      d.dropout = t.value("dropout", d.dropout);
      d.hidden1 = t.value("hidden1", d.hidden1);
      d.hidden2 = t.value("hidden2", d.hidden2);
      d.heads = t.value("heads", d.heads);
      d.seed = t.value("seed", d.seed);
      d.alpha_threshold = t.value("alpha_threshold", d.alpha_threshold);
      d.clip_norm = t.value("clip_norm", d.clip_norm);
      d.embed_dim = t.value("embed_dim", d.embed_dim);
      d.positional_dim = t.value("positional_dim", d.positional_dim);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config schema error: ") + e.what());
  }
  return cfg;
}

Config LoadConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str());
}

std::string_view DefaultConfigText() { return kEmbeddedDefaultConfig; }

const Config& DefaultConfig() {
  static const Config cfg = ParseConfig(DefaultConfigText());
  return cfg;
}

}  // namespace tabkb
