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

#include "tabkb/postprocess.h"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>

#include "tabkb/annotate.h"
#include "tabkb/labels.h"
#include "tabkb/numeric.h"
#include "tabkb/text.h"
#include "tabkb/units.h"

namespace tabkb {
namespace {

// Exponent repair only applies when values look unscaled.
constexpr double kValueFixMedian = 0.1;

bool Contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

bool AnyIn(const std::vector<std::string>& needles, const std::string& text) {
  return std::any_of(needles.begin(), needles.end(),
                     [&](const std::string& n) { return text.find(n) != std::string::npos; });
}

size_t HeadingEnd(std::span<const std::string> line) {
  return std::max<size_t>(1, FirstNumericCell(line));
}

std::string Heading(std::span<const std::string> line) {
  std::string h;
  const size_t end = std::min(HeadingEnd(line), line.size());
  for (size_t i = 0; i < end; ++i) {
    if (!h.empty()) h += ' ';
    h += line[i];
  }
  return h;
}

std::string CleanHeading(std::string_view heading) {
  std::string s(Trim(NormalizeForMatch(RemoveBracketed(heading))));
  while (!s.empty() && (s.back() == ',' || s.back() == ':' || s.back() == '.')) s.pop_back();
  return s;
}

// Cell value: find_num first, arithmetic evaluation as the fallback.
std::optional<NumericParse> CellValue(const std::string& cell) {
  if (auto v = ParseValueCell(cell)) return v;
  if (auto v = EvaluateArithmetic(cell)) {
    NumericParse p;
    p.value = *v;
    p.raw = cell;
    return p;
  }
  return std::nullopt;
}

std::string_view KindName(ValueKind k) {
  return k == ValueKind::kMeanOfRange ? "mean_of_range" : "single";
}

}  // namespace

nlohmann::ordered_json TupleToJson(const ExtractedTuple& t) {
  nlohmann::ordered_json j;
  j["entity"] = t.entity.ToString();
  j["pii"] = t.entity.pii;
  j["table_index"] = t.entity.table_index;
  j["row"] = t.entity.row;
  j["col"] = t.entity.col;
  j["material_id"] = t.entity.material_id;
  j["property"] = LabelKey(t.property);
  j["value"] = t.value;
  j["unit"] = t.unit;
  j["value_kind"] = KindName(t.kind);
  return j;
}

ExtractedTuple TupleFromJson(const nlohmann::json& j) {
  ExtractedTuple t;
  const auto code = LabelFromKey(j.at("property").get<std::string>());
  if (!code || !IsProperty(*code)) {
    throw TableError("tuple has unknown property " + j.at("property").dump());
  }
  t.property = *code;
  t.entity = MakeEntityId(j.at("pii").get<std::string>(), j.at("table_index").get<int>(),
                          j.at("row").get<int>(), j.at("col").get<int>(),
                          j.value("material_id", std::string()), EntityKind::kProperty);
  t.value = j.at("value").get<double>();
  if (!std::isfinite(t.value)) throw TableError("tuple value is not finite");
  t.unit = j.value("unit", std::string());
  t.kind = j.value("value_kind", std::string("single")) == "mean_of_range" ? ValueKind::kMeanOfRange
                                                                          : ValueKind::kSingle;
  return t;
}

std::string SerializeTuples(const std::vector<ExtractedTuple>& tuples) {
  std::string out;
  for (const auto& t : tuples) {
    out += TupleToJson(t).dump();
    out += '\n';
  }
  return out;
}

std::vector<ExtractedTuple> ParseTuples(std::string_view bytes) {
  std::vector<ExtractedTuple> out;
  std::istringstream in{std::string(bytes)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      out.push_back(TupleFromJson(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw TableError("tuple line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

bool CheckHeading(std::string_view pii, int table_index, std::span<const std::string> line,
                  std::string_view caption, int label, const Config& cfg,
                  const ArticleCheck& article_check) {
  if (!IsProperty(label)) return true;
  const std::string heading = Heading(line);
  const std::string lower = NormalizeForMatch(heading);
  const std::string cap = NormalizeForMatch(caption);
  const std::string clean = CleanHeading(heading);
  const PropertyRules& rules = cfg.Rules(label);

  if (AnyIn(cfg.composition_unit_tokens, lower)) return false;
  if (AnyIn(rules.disqualify_tokens, lower) || AnyIn(rules.disqualify_tokens, cap)) return false;

  if (Contains(rules.ambiguous_headings, clean)) {
    const auto values = LineValues(line, HeadingEnd(line));
    const auto median = Median(values);
    const bool by_caption = AnyIn(rules.caption_keywords, cap);
    const bool by_range = median && rules.value_range.Contains(*median);
    if (!by_caption && !by_range) return false;
  }
  if (Contains(rules.overload_headings, clean)) {
    const bool canonical =
        AnyIn(rules.canonical_phrases, cap) || AnyIn(rules.caption_keywords, cap);
    if (!canonical && !(article_check && article_check(pii, table_index, label))) return false;
  }
  return true;
}

bool CheckWhetherInLimit(std::span<const double> values, int property, const Config& cfg) {
  const auto& range = cfg.Rules(property).median_range;
  if (!range) return true;
  const auto median = Median(std::vector<double>(values.begin(), values.end()));
  return !median || range->Contains(*median);
}

std::optional<int> ValueFixExponent(std::string_view heading, int property, const Config& cfg) {
  const auto& fix = cfg.Rules(property).value_fix;
  if (!fix) return std::nullopt;
  const std::string text = NormalizeForMatch(heading);
  std::smatch m;
  if (!std::regex_search(text, m, fix->re) || m.size() < 3) {
    if (ContainsToken(text, "ppm")) return -6;
    return std::nullopt;
  }
  std::string digits;
  for (char c : m.str(2)) {
    if (c != ' ') digits.push_back(c);
  }
  return std::stoi(digits);
}

bool ContextRuleFires(const ContextRule& rule, std::string_view heading, std::string_view caption,
                      const std::optional<std::string>& unit) {
  const std::string h = CleanHeading(heading);
  const std::string cap = NormalizeForMatch(caption);
  if (rule.heading && !std::regex_search(h, rule.heading->re)) return false;
  if (!rule.caption_any.empty() && !AnyIn(rule.caption_any, cap)) return false;
  if (AnyIn(rule.caption_none, cap)) return false;
  if (!rule.unit_in.empty() && !(unit && Contains(rule.unit_in, *unit))) return false;
  return true;
}

std::vector<ExtractedTuple> TempCutOff(const std::vector<ExtractedTuple>& tuples,
                                       const Config& cfg) {
  std::vector<ExtractedTuple> out;
  for (const auto& t : tuples) {
    const auto range = cfg.ValueRange(t.property, t.unit);
    if (range && !range->Contains(t.value)) continue;
    out.push_back(t);
  }
  return out;
}

std::vector<ExtractedTuple> RemoveTuplesOnUnits(const std::vector<ExtractedTuple>& tuples,
                                                const Config& cfg) {
  std::vector<ExtractedTuple> out;
  for (const auto& t : tuples) {
    if (!cfg.IsInvalidUnit(t.property, t.unit)) out.push_back(t);
  }
  return out;
}

std::vector<ExtractedTuple> FilterTuples(const std::vector<ExtractedTuple>& tuples,
                                         const Config& cfg) {
  return RemoveTuplesOnUnits(TempCutOff(tuples, cfg), cfg);
}

nlohmann::ordered_json RuleFiringToJson(const RuleFiring& f) {
  nlohmann::ordered_json j;
  j["table"] = f.table;
  j["axis"] = AxisName(f.axis);
  j["index"] = f.index;
  j["rule"] = f.rule;
  j["from"] = f.from;
  j["to"] = f.to;
  if (!f.detail.empty()) j["detail"] = f.detail;
  return j;
}

PostprocessResult PostProcessTable(const Table& table, const std::vector<int>& row_labels,
                                   const std::vector<int>& col_labels, const Config& cfg,
                                   const PostprocessOptions& options) {
  if (row_labels.size() != table.num_rows() || col_labels.size() != table.num_cols()) {
    throw RectangularityError("table " + table.id() + ": label vectors do not match the grid");
  }
  PostprocessResult res;
  res.row_labels = row_labels;
  res.col_labels = col_labels;

  auto share = [](const std::vector<int>& labels) {
    const auto n = std::count_if(labels.begin(), labels.end(), [](int c) { return c >= 2; });
    return labels.empty() ? 0.0 : static_cast<double>(n) / labels.size();
  };
  const double r = share(row_labels);
  const double c = share(col_labels);
  const Axis axis = r <= c ? Axis::kCol : Axis::kRow;
  res.orientation = axis;
  auto& labels = axis == Axis::kRow ? res.row_labels : res.col_labels;
  const std::string tid = table.id();

  auto fire = [&](int index, std::string rule, int from, int to, std::string detail = "") {
    res.audit.push_back({tid, axis, index, std::move(rule), from, to, std::move(detail)});
  };

  // Per-line value overrides from exponent repair.
  std::vector<double> scale(labels.size(), 1.0);
  for (size_t j = 0; j < labels.size(); ++j) {
    const auto line = table.Line(axis, j);
    const std::string heading = Heading(line);
    const int p = labels[j];

    if (!CheckHeading(table.pii, table.table_index, line, table.caption, p, cfg,
                      options.article_check)) {
      labels[j] = 0;
      fire(static_cast<int>(j), "check_heading", p, 0);
    }
    if (p == 0) {
      const int q = DirectMatch(heading, cfg);
      if (q != 0) {
        labels[j] = q;
        fire(static_cast<int>(j), "direct_matching", 0, q);
      }
    }
    const std::string clean = CleanHeading(heading);
    for (int pid : cfg.property_order) {
      const auto& patterns = cfg.Rules(pid).header_patterns;
      const bool hit = std::any_of(patterns.begin(), patterns.end(), [&](const Pattern& pat) {
        return std::regex_search(clean, pat.re);
      });
      if (hit && labels[j] != pid) {
        fire(static_cast<int>(j), "pattern_map", labels[j], pid, clean);
        labels[j] = pid;
      }
    }
    for (const auto& rule : cfg.context_rules) {
      if (labels[j] == rule.property) continue;
      std::optional<std::string> unit;
      if (!rule.unit_in.empty()) unit = SetUnits(line, rule.property, table.caption, cfg).unit;
      if (ContextRuleFires(rule, heading, table.caption, unit)) {
        fire(static_cast<int>(j), "context_map", labels[j], rule.property, clean);
        labels[j] = rule.property;
      }
    }
    if (IsProperty(labels[j])) {
      std::vector<double> values = LineValues(line, HeadingEnd(line));
      if (const auto x = ValueFixExponent(heading, labels[j], cfg)) {
        const auto median = Median(values);
        if (median && *median > kValueFixMedian) {
          scale[j] = std::pow(10.0, *x);
          for (double& v : values) v *= scale[j];
          fire(static_cast<int>(j), "value_fix", labels[j], labels[j],
               "10^" + std::to_string(*x));
        }
      }
      if (!CheckWhetherInLimit(values, labels[j], cfg)) {
        fire(static_cast<int>(j), "median_limit", labels[j], 0);
        labels[j] = 0;
      }
    }
  }

  // Material ids come from the first gid line on the property axis.
  std::optional<std::vector<std::string>> gid;
  for (size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] == static_cast<int>(Label::kMaterialId)) {
      gid = table.Line(axis, j);
      break;
    }
  }

  std::vector<ExtractedTuple> tuples;
  for (size_t j = 0; j < labels.size(); ++j) {
    const int p = labels[j];
    if (!IsProperty(p)) continue;
    const auto line = table.Line(axis, j);
    const UnitResult unit = SetUnits(line, p, table.caption, cfg);
    const std::string canonical = unit.unit.value_or("");
    for (size_t k = HeadingEnd(line); k < line.size(); ++k) {
      const auto parsed = CellValue(line[k]);
      if (!parsed || !std::isfinite(parsed->value)) continue;
      ExtractedTuple t;
      const int row = axis == Axis::kRow ? static_cast<int>(j) : static_cast<int>(k);
      const int col = axis == Axis::kRow ? static_cast<int>(k) : static_cast<int>(j);
      const std::string material = gid ? std::string(Trim((*gid)[k])) : std::string();
      t.entity = MakeEntityId(table.pii, table.table_index, row, col, material,
                              EntityKind::kProperty, &table);
      t.property = p;
      t.value = parsed->value * scale[j];
      t.unit = canonical;
      t.kind = parsed->was_range ? ValueKind::kMeanOfRange : ValueKind::kSingle;
      if (auto rep = ReciprocalRepair(t.value, t.unit, p, cfg.units)) {
        t.value = rep->value;
        t.unit = rep->unit;
      }
      tuples.push_back(std::move(t));
    }
  }
  const auto in_range = TempCutOff(tuples, cfg);
  res.removed_by_range = static_cast<int>(tuples.size() - in_range.size());
  res.tuples = RemoveTuplesOnUnits(in_range, cfg);
  res.removed_by_unit = static_cast<int>(in_range.size() - res.tuples.size());
  return res;
}

}  // namespace tabkb
