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

#include "tabkb/units.h"

#include <algorithm>
#include <regex>
#include <vector>

#include "tabkb/numeric.h"
#include "tabkb/text.h"

namespace tabkb {
namespace {

const std::regex& ScaleFactorRe() {
  static const std::regex re(
      R"(^\s*(x|×|\*|·)?\s*10\s*\^?\s*\(?\s*[-+]?\s*[0-9]+\s*\)?\s*)");
  return re;
}

const std::regex& UncertaintyUnitRe() {
  static const std::regex re(R"((±|\+/-|\+-)\s*[0-9.]+\s*(.+)$)");
  return re;
}

const std::regex& CaptionInRe() {
  static const std::regex re(R"((^|\s)in\s+([^\s,;()]+)(\s+[^\s,;()]+)?)");
  return re;
}

bool Contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// Lowercase match text with Greek capital omega folded too.
std::string MatchText(std::string_view s) {
  std::string out = NormalizeForMatch(s);
  size_t pos = 0;
  while ((pos = out.find("Ω", pos)) != std::string::npos) {
    out.replace(pos, std::string("Ω").size(), "ω");
  }
  return out;
}

std::optional<std::string> TryCandidate(std::string_view s, const UnitLexicon& lex) {
  std::string c = StripScaleFactor(Trim(s));
  std::string_view v = Trim(c);
  if (v.size() > 3 && AsciiLower(v.substr(0, 3)) == "in ") v.remove_prefix(3);
  v = Trim(v);
  const std::string key = UnitKey(v);
  if (key.empty() || !lex.vocabulary.count(key) || Contains(lex.preventive_keys, key)) {
    return std::nullopt;
  }
  return std::string(v);
}

std::vector<std::string> Tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::optional<std::string> Validated(std::string_view raw, int property, const UnitLexicon& lex) {
  const auto n = NormUnit(raw, property, lex);
  if (!n || n->empty() || !CheckNoncontrov(n, property, lex)) return std::nullopt;
  return n;
}

// Property-specific patterns over the heading text.
std::optional<std::string> FindUnitFurther(int property, std::string_view heading,
                                           const UnitLexicon& lex, std::string* raw) {
  const std::string text = MatchText(heading);
  for (const Pattern& p : lex.For(property).fallback_patterns) {
    std::smatch m;
    if (!std::regex_search(text, m, p.re)) continue;
    if (auto unit = Validated(m.str(0), property, lex)) {
      *raw = m.str(0);
      return unit;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> NormUnit(std::string_view raw, int property, const UnitLexicon& lex) {
  if (Trim(raw).empty()) return std::nullopt;
  const std::string key = UnitKey(raw);
  if (key.empty()) return std::nullopt;
  const auto& surface = lex.For(property).surface;
  auto it = surface.find(key);
  if (it == surface.end()) return std::string();
  return it->second;
}

bool CheckNoncontrov(const std::optional<std::string>& canonical, int property,
                     const UnitLexicon& lex) {
  if (!canonical) return true;
  const PropertyUnits& u = lex.For(property);
  if (u.unitless || canonical->empty()) return false;
  return Contains(u.allowed, *canonical) || Contains(u.aliases, *canonical);
}

std::string StripScaleFactor(std::string_view s) {
  const std::string text = NormalizeCompat(s);
  std::smatch m;
  if (std::regex_search(text, m, ScaleFactorRe())) {
    // A bare "10" with nothing after it is a value, not a factor.
    if (static_cast<size_t>(m.length(0)) < text.size()) return text.substr(m.length(0));
  }
  return text;
}

std::optional<std::string> ExtractUnitCandidate(std::string_view cell, const UnitLexicon& lex) {
  const std::string text(Trim(NormalizeCompat(cell)));
  if (text.empty()) return std::nullopt;
  if (auto c = TryCandidate(text, lex)) return c;

  const std::string bracket = LastBracketed(text);
  if (!bracket.empty()) {
    if (auto c = TryCandidate(bracket, lex)) return c;
    for (char sep : {',', ';'}) {
      for (const auto& part : SplitOn(bracket, sep)) {
        if (auto c = TryCandidate(part, lex)) return c;
      }
    }
  }

  std::smatch m;
  if (std::regex_search(text, m, UncertaintyUnitRe())) {
    if (auto c = TryCandidate(m.str(2), lex)) return c;
  }

  const std::string outside = RemoveBracketed(text);
  if (const size_t comma = outside.rfind(','); comma != std::string::npos) {
    if (auto c = TryCandidate(outside.substr(comma + 1), lex)) return c;
  }
  const std::string lower = AsciiLower(outside);
  if (const size_t in = lower.rfind(" in "); in != std::string::npos) {
    if (auto c = TryCandidate(outside.substr(in + 4), lex)) return c;
  }
  for (size_t slash = outside.find('/'); slash != std::string::npos;
       slash = outside.find('/', slash + 1)) {
    if (auto c = TryCandidate(outside.substr(slash + 1), lex)) return c;
  }
  const auto tokens = Tokens(outside);
  for (size_t n = std::min<size_t>(3, tokens.size() > 1 ? tokens.size() - 1 : 0); n >= 1; --n) {
    std::string tail;
    for (size_t i = tokens.size() - n; i < tokens.size(); ++i) {
      if (!tail.empty()) tail += ' ';
      tail += tokens[i];
    }
    if (auto c = TryCandidate(tail, lex)) return c;
  }
  return std::nullopt;
}

std::optional<std::string> UnitFromCaption(std::string_view caption, int property,
                                           const UnitLexicon& lex) {
  const PropertyUnits& u = lex.For(property);
  if (u.surface.empty()) return std::nullopt;
  const std::string text = NormalizeCompat(caption);
  auto known = [&](std::string_view s) -> bool {
    return u.surface.count(UnitKey(StripScaleFactor(s))) > 0;
  };

  // Every bracketed group, left to right.
  for (size_t open = text.find('('); open != std::string::npos; open = text.find('(', open + 1)) {
    const size_t close = text.find(')', open);
    if (close == std::string::npos) break;
    const std::string inner(Trim(text.substr(open + 1, close - open - 1)));
    if (!inner.empty() && known(inner)) return std::string(Trim(StripScaleFactor(inner)));
  }
  for (auto it = std::sregex_iterator(text.begin(), text.end(), CaptionInRe());
       it != std::sregex_iterator(); ++it) {
    const std::string two = (*it)[2].str() + (*it)[3].str();
    if (known(two)) return std::string(Trim(two));
    if (known((*it)[2].str())) return (*it)[2].str();
  }
  const std::string lower = MatchText(text);
  for (const auto& [form, canonical] : u.surface_forms) {
    if (UnitKey(form).size() < 3) continue;
    if (ContainsToken(lower, MatchText(form))) return form;
  }
  return std::nullopt;
}

std::optional<std::string> PostProcessUnitExtras(const std::optional<std::string>& unit,
                                                 std::string_view heading,
                                                 std::string_view caption,
                                                 std::optional<double> value,
                                                 const UnitLexicon& lex) {
  if (unit && !unit->empty() && !Contains(lex.hardness_spurious, *unit)) return unit;

  const std::string h = MatchText(heading);
  const std::string c = MatchText(caption);
  auto find_scale = [&](const std::string& text) -> const HardnessScale* {
    for (const auto& scale : lex.hardness_scales) {
      for (const auto& kw : scale.keywords) {
        if (ContainsToken(text, kw)) return &scale;
      }
    }
    return nullptr;
  };
  const HardnessScale* scale = find_scale(h);
  if (scale == nullptr) scale = find_scale(c);
  if (scale != nullptr) {
    auto r = lex.hardness_ranges.find(scale->unit);
    if (!value || r == lex.hardness_ranges.end() || r->second.Contains(*value)) {
      return scale->unit;
    }
  }
  if (value && lex.nanoindentation.Contains(*value)) {
    for (const auto& kw : lex.hardness_text_keywords) {
      if (h.find(kw) != std::string::npos || c.find(kw) != std::string::npos) {
        return std::string("GPa");
      }
    }
  }
  return std::nullopt;
}

UnitResult SetUnits(std::span<const std::string> line, int property, std::string_view caption,
                    const Config& cfg) {
  const UnitLexicon& lex = cfg.units;
  size_t first_numeric = line.size();
  for (size_t i = 0; i < line.size(); ++i) {
    if (IsNumericCell(line[i])) {
      first_numeric = i;
      break;
    }
  }
  const size_t heading_end =
      first_numeric < line.size() ? std::max<size_t>(first_numeric, 1)
                                  : std::min<size_t>(line.size() / 2, 3);
  std::string heading;
  for (size_t i = 0; i < heading_end && i < line.size(); ++i) {
    if (!heading.empty()) heading += ' ';
    heading += line[i];
  }
  std::vector<double> values;
  for (size_t i = heading_end; i < line.size(); ++i) {
    if (auto v = ParseValueCell(line[i])) values.push_back(v->value);
  }
  const std::optional<double> median = Median(values);

  UnitResult result;
  auto finish = [&]() -> UnitResult {
    if (property == static_cast<int>(Label::kHardness)) {
      auto refined = PostProcessUnitExtras(result.unit, heading, caption, median, lex);
      if (refined != result.unit) {
        result.unit = refined;
        result.source = refined ? "hardness" : "";
      }
    }
    return result;
  };

  std::optional<std::string> raw;
  for (size_t i = 0; i < heading_end && i < line.size() && !raw; ++i) {
    raw = ExtractUnitCandidate(line[i], lex);
  }
  if (raw) {
    result.raw = *raw;
    if (auto unit = Validated(*raw, property, lex)) {
      result.unit = unit;
      result.source = "heading";
      return finish();
    }
  }
  std::string further_raw;
  if (auto unit = FindUnitFurther(property, heading, lex, &further_raw)) {
    result.unit = unit;
    result.raw = further_raw;
    result.source = "fallback";
    return finish();
  }
  if (!raw) {
    if (auto cap = UnitFromCaption(caption, property, lex)) {
      result.raw = *cap;
      if (auto unit = Validated(*cap, property, lex)) {
        result.unit = unit;
        result.source = "caption";
        return finish();
      }
    }
    if (median) {
      for (const auto& d : lex.For(property).median_defaults) {
        if (d.median.Contains(*median)) {
          result.unit = d.unit;
          result.source = "median_default";
          return finish();
        }
      }
    }
  }
  return finish();
}

std::optional<Repaired> ReciprocalRepair(double value, std::string_view unit, int property,
                                         const UnitLexicon& lex) {
  const auto& rec = lex.For(property).reciprocal;
  auto it = rec.find(std::string(unit));
  if (it == rec.end() || value == 0.0) return std::nullopt;
  return Repaired{1.0 / value, it->second};
}

}  // namespace tabkb
