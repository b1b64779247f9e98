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

#include "tabkb/annotate.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "tabkb/composition.h"
#include "tabkb/labels.h"
#include "tabkb/numeric.h"
#include "tabkb/text.h"
#include "tabkb/units.h"

namespace tabkb {
namespace {

bool Contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string StripTrailingPunct(std::string s) {
  while (!s.empty() && (s.back() == ':' || s.back() == '.' || s.back() == ' ')) s.pop_back();
  return s;
}

int CountProperties(const std::vector<int>& labels) {
  return static_cast<int>(std::count_if(labels.begin(), labels.end(), IsProperty));
}

// Headed by a gid phrase, with distinct body cells none of which looks like
// a property header.
bool AllFormulas(const std::vector<std::string>& line) {
  for (size_t k = 1; k < line.size(); ++k) {
    if (!IsChemicalFormula(Trim(line[k]))) return false;
  }
  return line.size() > 1;
}

bool IsGidLine(const std::vector<std::string>& line, const Config& cfg) {
  if (line.size() < 2) return false;
  const std::string head =
      StripTrailingPunct(std::string(Trim(NormalizeForMatch(RemoveBracketed(line.front())))));
  if (!Contains(cfg.gid_phrases, head)) return false;
  std::set<std::string> seen;
  for (size_t k = 1; k < line.size(); ++k) {
    const std::string cell(Trim(line[k]));
    if (cell.empty() || !seen.insert(cell).second) return false;
    if (cell.find('(') != std::string::npos || DirectMatch(cell, cfg) != 0) return false;
    // A unit inside longer text marks a header; a bare "C" or "K" is a name.
    const auto unit = ExtractUnitCandidate(cell, cfg.units);
    if (unit && *unit != cell) return false;
  }
  return true;
}

}  // namespace

HeaderParts SplitHeader(std::span<const std::string> line, const UnitLexicon& lex) {
  HeaderParts parts;
  size_t end = FirstNumericCell(line);
  if (end == line.size()) end = std::min<size_t>(1, line.size());
  for (size_t i = 0; i < end; ++i) {
    if (!parts.heading.empty()) parts.heading += ' ';
    parts.heading += line[i];
    if (!parts.unit_text) parts.unit_text = ExtractUnitCandidate(line[i], lex);
  }
  parts.values = LineValues(line, end);

  std::string text = RemoveBracketed(NormalizeCompat(parts.heading));
  if (const size_t comma = text.find(','); comma != std::string::npos) text.resize(comma);
  if (const size_t slash = text.find('/'); slash != std::string::npos) {
    if (ExtractUnitCandidate(text.substr(slash + 1), lex)) text.resize(slash);
  }
  parts.content = StripTrailingPunct(std::string(Trim(NormalizeForMatch(text))));
  return parts;
}

bool DirectMatchFor(std::string_view header, int property, const Config& cfg) {
  const std::string h = NormalizeForMatch(header);
  const PropertyRules& rules = cfg.Rules(property);
  for (const auto& bad : rules.disqualify_tokens) {
    if (h.find(bad) != std::string::npos) return false;
  }
  for (const auto& phrase : rules.canonical_phrases) {
    if (ContainsToken(h, phrase)) return true;
  }
  return false;
}

int DirectMatch(std::string_view header, const Config& cfg) {
  for (int p : cfg.property_order) {
    if (DirectMatchFor(header, p, cfg)) return p;
  }
  return 0;
}

bool IsSymbolAlias(std::string_view content, int property, const Config& cfg) {
  return !content.empty() && Contains(cfg.Rules(property).symbol_aliases, content);
}

ValidationSignals PropertySignals(int property, const HeaderParts& header,
                                  std::string_view caption, const Config& cfg) {
  const PropertyRules& rules = cfg.Rules(property);
  ValidationSignals s;
  if (header.unit_text && !cfg.units.For(property).unitless) {
    const auto unit = NormUnit(*header.unit_text, property, cfg.units);
    s.unit = unit && !unit->empty() && CheckNoncontrov(unit, property, cfg.units);
  }
  s.range = std::any_of(header.values.begin(), header.values.end(),
                        [&](double v) { return rules.value_range.Contains(v); });
  const std::string c = NormalizeForMatch(caption);
  s.caption = std::any_of(rules.caption_keywords.begin(), rules.caption_keywords.end(),
                          [&](const std::string& k) { return c.find(k) != std::string::npos; });
  s.symbol = IsSymbolAlias(header.content, property, cfg);
  s.name = Contains(rules.canonical_phrases, header.content);
  return s;
}

bool AcceptSignals(const ValidationSignals& s, int threshold) { return s.Score() >= threshold; }

bool ValidateProperty(int property, const HeaderParts& header, std::string_view caption,
                      const Config& cfg) {
  return AcceptSignals(PropertySignals(property, header, caption, cfg),
                       cfg.Rules(property).threshold);
}

bool FirstLineHasNumbers(const Table& table, Axis axis) {
  const auto line = table.Line(axis, 0);
  int n = 0;
  for (size_t i = 1; i < line.size(); ++i) n += IsNumericCell(line[i]);
  return n >= 3;
}

AnnotationResult AnnotateTable(const Table& table, const Config& cfg) {
  AnnotationResult out;
  out.row_labels = table.row_labels;
  out.col_labels = table.col_labels;
  std::vector<bool> fresh[2] = {std::vector<bool>(table.num_rows()),
                                std::vector<bool>(table.num_cols())};

  // Cells of a gid line name materials; lines headed by them are not
  // offered to the symbol path.
  std::vector<bool> gid_line[2];
  for (Axis axis : {Axis::kRow, Axis::kCol}) {
    auto& g = gid_line[axis == Axis::kRow ? 0 : 1];
    g.resize(table.Count(axis));
    for (size_t i = 0; i < g.size(); ++i) g[i] = IsGidLine(table.Line(axis, i), cfg);
  }
  // Row 0 and column 0 share the corner heading. A line of formulas names
  // constituents, not materials; otherwise the column keeps the gid reading
  // since column-major layout is the common case.
  if (!gid_line[0].empty() && !gid_line[1].empty() && gid_line[0][0] && gid_line[1][0]) {
    if (AllFormulas(table.Line(Axis::kCol, 0)) && !AllFormulas(table.Line(Axis::kRow, 0))) {
      gid_line[1][0] = false;
    } else {
      gid_line[0][0] = false;
    }
  }
  // Per axis: direct-match count and summed validation scores.
  int direct[2] = {0, 0};
  int score_sum[2] = {0, 0};

  for (Axis axis : {Axis::kRow, Axis::kCol}) {
    const int a = axis == Axis::kRow ? 0 : 1;
    const auto& cross_gid = gid_line[1 - a];
    auto& labels = axis == Axis::kRow ? out.row_labels : out.col_labels;
    for (size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] != 0) continue;
      const auto line = table.Line(axis, i);
      const HeaderParts header = SplitHeader(line, cfg.units);
      if (header.values.empty()) continue;
      const size_t heading_cells = std::max<size_t>(1, FirstNumericCell(line));
      bool named_material = false;
      for (size_t k = 0; k < heading_cells && k < cross_gid.size(); ++k) {
        named_material = named_material || cross_gid[k];
      }
      int assigned = 0;
      for (int p : cfg.property_order) {
        if (DirectMatchFor(header.heading, p, cfg)) {
          assigned = p;
          ++direct[a];
          break;
        }
        if (named_material || !IsSymbolAlias(header.content, p, cfg)) continue;
        const auto signals = PropertySignals(p, header, table.caption, cfg);
        if (AcceptSignals(signals, cfg.Rules(p).threshold)) {
          assigned = p;
          score_sum[a] += signals.Score();
          break;
        }
      }
      if (assigned != 0) {
        labels[i] = assigned;
        fresh[a][i] = true;
        ++out.assigned;
      }
    }
  }

  const int row_props = CountProperties(out.row_labels);
  const int col_props = CountProperties(out.col_labels);
  if (row_props > 0 && col_props > 0) {
    const bool check_row = FirstLineHasNumbers(table, Axis::kRow);
    const bool check_col = FirstLineHasNumbers(table, Axis::kCol);
    Axis loser;
    if (check_row && !check_col) {
      loser = Axis::kCol;
    } else if (!check_row && check_col) {
      loser = Axis::kRow;
    } else {
      // More property labels wins; an exact tie goes to the axis with more
      // direct matches, then the higher summed validation score, then rows.
      const auto row_key = std::make_tuple(row_props, direct[0], score_sum[0]);
      const auto col_key = std::make_tuple(col_props, direct[1], score_sum[1]);
      loser = col_key > row_key ? Axis::kRow : Axis::kCol;
    }
    auto& labels = loser == Axis::kRow ? out.row_labels : out.col_labels;
    const auto& mine = fresh[loser == Axis::kRow ? 0 : 1];
    for (size_t i = 0; i < labels.size(); ++i) {
      // Incoming labels are never overwritten.
      if (IsProperty(labels[i]) && mine[i]) {
        labels[i] = 0;
        ++out.suppressed;
        --out.assigned;
      }
    }
    out.suppressed_axis = loser;
  }

  // Material identifier: the first unlabeled line on the property axis whose
  // heading is a gid phrase and whose remaining cells are distinct names.
  auto has_roles = [](const std::vector<int>& v) {
    return std::any_of(v.begin(), v.end(), [](int c) { return c >= 2; });
  };
  const bool row_roles = has_roles(out.row_labels), col_roles = has_roles(out.col_labels);
  const bool col_candidate = std::find(gid_line[1].begin(), gid_line[1].end(), true) !=
                             gid_line[1].end();
  Axis gid_axis = Axis::kCol;
  if (row_roles != col_roles) {
    gid_axis = row_roles ? Axis::kRow : Axis::kCol;
  } else if (!col_candidate) {
    gid_axis = Axis::kRow;
  }
  auto& labels = gid_axis == Axis::kRow ? out.row_labels : out.col_labels;
  if (std::find(labels.begin(), labels.end(), static_cast<int>(Label::kMaterialId)) ==
      labels.end()) {
    const auto& g = gid_line[gid_axis == Axis::kRow ? 0 : 1];
    for (size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] != 0 || !g[i]) continue;
      labels[i] = static_cast<int>(Label::kMaterialId);
      ++out.assigned;
      break;
    }
  }
  return out;
}

}  // namespace tabkb
