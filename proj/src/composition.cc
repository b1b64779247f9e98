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

#include "tabkb/composition.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "tabkb/labels.h"
#include "tabkb/numeric.h"
#include "tabkb/text.h"

namespace tabkb {

extern const char kEmbeddedCompounds[];

namespace {

constexpr int kConstituentLine = static_cast<int>(Label::kConstituent);
constexpr int kCompositionLine = static_cast<int>(Label::kComposition);
constexpr int kGidLine = static_cast<int>(Label::kMaterialId);

constexpr std::array<std::string_view, 118> kElements = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg", "Al", "Si", "P",
    "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn",
    "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh",
    "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W",  "Re",
    "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th",
    "Pa", "U",  "Np", "Pu", "Am", "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db",
    "Sg", "Bh", "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

bool IsElement(std::string_view s) {
  return std::find(kElements.begin(), kElements.end(), s) != kElements.end();
}

const std::regex& UnitRegex() {
  static const std::regex re(R"((mol|mole|wt|weight|mass|at|atomic)\s*\.?\s*%)",
                             std::regex::icase);
  return re;
}

// Recursive-descent parse of one formula part starting at `i`.
bool ParseGroup(std::string_view s, size_t& i, int depth) {
  bool any = false;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isupper(static_cast<unsigned char>(c))) {
      size_t len = 1;
      if (i + 1 < s.size() && std::islower(static_cast<unsigned char>(s[i + 1])) &&
          IsElement(s.substr(i, 2))) {
        len = 2;
      }
      if (!IsElement(s.substr(i, len))) return false;
      i += len;
    } else if (c == '(' || c == '[') {
      const char close = c == '(' ? ')' : ']';
      ++i;
      if (!ParseGroup(s, i, depth + 1) || i >= s.size() || s[i] != close) return false;
      ++i;
    } else if ((c == ')' || c == ']') && depth > 0) {
      return any;
    } else {
      return false;
    }
    any = true;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
  }
  return any && depth == 0;
}

bool IsFormulaPart(std::string_view part) {
  // Leading stoichiometric coefficient, as in "2SiO2".
  size_t i = 0;
  while (i < part.size() && (std::isdigit(static_cast<unsigned char>(part[i])) || part[i] == '.')) {
    ++i;
  }
  if (i == part.size()) return false;
  return ParseGroup(part, i, 0) && i == part.size();
}

bool IsPlaceholder(std::string_view cell, const Config& cfg) {
  const std::string c = NormalizeForMatch(Trim(cell));
  return std::find(cfg.composition.placeholders.begin(), cfg.composition.placeholders.end(), c) !=
         cfg.composition.placeholders.end();
}

// Composition value of a cell; placeholders read as zero.
std::optional<double> CompositionValue(std::string_view cell, const Config& cfg) {
  if (Trim(cell).empty()) return std::nullopt;
  if (auto v = ParseValueCell(cell)) return v->value;
  if (IsPlaceholder(cell, cfg)) return 0.0;
  return std::nullopt;
}

// Heading cells run up to the first value-like cell: numeric, placeholder
// or empty.
size_t HeadingEnd(const std::vector<std::string>& line, const Config& cfg) {
  size_t end = std::min<size_t>(1, line.size());
  while (end < line.size() && !Trim(line[end]).empty() && !IsNumericCell(line[end]) &&
         !IsPlaceholder(line[end], cfg)) {
    ++end;
  }
  return end;
}

std::string HeadingOf(const std::vector<std::string>& line, const Config& cfg) {
  const size_t end = HeadingEnd(line, cfg);
  std::string h;
  for (size_t i = 0; i < end; ++i) {
    if (Trim(line[i]).empty()) continue;
    if (!h.empty()) h += ' ';
    h += Trim(line[i]);
  }
  return h;
}

std::string_view Cell(const Table& t, Axis comp_axis, int comp_pos, int value_pos) {
  // Composition lines run along comp_axis; value lines cross them.
  return comp_axis == Axis::kCol ? t.cells[value_pos][comp_pos] : t.cells[comp_pos][value_pos];
}

}  // namespace

void CompoundLexicon::Add(std::string formula, const std::vector<std::string>& aliases) {
  for (const auto& a : aliases) {
    const std::string key = NormalizeForMatch(Trim(a));
    if (!key.empty()) aliases_.emplace(key, formula);
  }
  aliases_.emplace(NormalizeForMatch(formula), formula);
  formulas_.emplace(formula, formula);
}

std::optional<std::string> CompoundLexicon::Lookup(std::string_view text) const {
  const std::string t(Trim(NormalizeCompat(text)));
  if (auto it = formulas_.find(t); it != formulas_.end()) return it->second;
  if (auto it = aliases_.find(NormalizeForMatch(t)); it != aliases_.end()) return it->second;
  return std::nullopt;
}

bool CompoundLexicon::ContainsFormula(std::string_view formula) const {
  return formulas_.find(formula) != formulas_.end();
}

CompoundLexicon ParseCompoundLexicon(std::string_view text) {
  CompoundLexicon lex;
  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (Trim(line).empty()) continue;
    const size_t tab = line.find('\t');
    const std::string formula(Trim(line.substr(0, tab)));
    if (!IsChemicalFormula(formula)) {
      throw CompositionError("compound lexicon line " + std::to_string(line_no) +
                             ": not a formula: " + formula);
    }
    std::vector<std::string> aliases;
    if (tab != std::string::npos) {
      for (const auto& a : SplitOn(line.substr(tab + 1), ',')) aliases.emplace_back(Trim(a));
    }
    lex.Add(formula, aliases);
  }
  return lex;
}

CompoundLexicon LoadCompoundLexicon(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CompositionError("cannot open compound lexicon " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseCompoundLexicon(ss.str());
}

const CompoundLexicon& DefaultCompounds() {
  static const CompoundLexicon lex = ParseCompoundLexicon(kEmbeddedCompounds);
  return lex;
}

bool IsChemicalFormula(std::string_view text) {
  const std::string s(Trim(NormalizeCompat(text)));
  if (s.empty()) return false;
  std::vector<std::string> parts;
  std::string cur;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '-' || s[i] == '+') {
      parts.push_back(cur);
      cur.clear();
    } else if (s.compare(i, 2, "\xC2\xB7") == 0) {  // middle dot
      parts.push_back(cur);
      cur.clear();
      ++i;
    } else {
      cur.push_back(s[i]);
    }
  }
  parts.push_back(cur);
  return std::all_of(parts.begin(), parts.end(),
                     [](const std::string& p) { return IsFormulaPart(p); });
}

std::optional<std::string> CompositionUnit(std::string_view text) {
  const std::string s = NormalizeCompat(text);
  std::smatch m;
  if (!std::regex_search(s, m, UnitRegex())) return std::nullopt;
  const std::string head = AsciiLower(m.str(1));
  if (head == "mol" || head == "mole") return "mol%";
  if (head == "at" || head == "atomic") return "at%";
  return "wt%";
}

Constituent DetectConstituents(std::string_view header, const Config& cfg,
                               const CompoundLexicon& lexicon) {
  Constituent out;
  const std::string norm = NormalizeForMatch(header);
  for (const auto& bad : cfg.composition.exclusion_tokens) {
    if (ContainsToken(norm, bad)) return out;
  }
  const std::string text = NormalizeCompat(header);
  if (auto unit = CompositionUnit(text)) out.unit = *unit;

  std::string rest = std::regex_replace(text, UnitRegex(), " ");
  rest = RemoveBracketed(rest);
  std::string expr(Trim(rest));
  while (!expr.empty() && std::string_view(",;:/").find(expr.back()) != std::string_view::npos) {
    expr.pop_back();
    expr = std::string(Trim(expr));
  }
  if (IsChemicalFormula(expr)) {
    out.expression = expr;
  } else if (auto f = lexicon.Lookup(expr)) {
    out.expression = *f;
  }
  if (out.expression.empty()) out.unit.clear();
  return out;
}

bool InSumWindow(double median) {
  return (median > 0.95 && median < 1.05) || (median > 95.0 && median < 105.0);
}

std::vector<CompositionEdge> EnumerateEdges(const std::vector<int>& row_labels,
                                            const std::vector<int>& col_labels) {
  const bool col = std::find(col_labels.begin(), col_labels.end(), kCompositionLine) !=
                   col_labels.end();
  const auto& comp = col ? col_labels : row_labels;
  const auto& cross = col ? row_labels : col_labels;
  std::vector<CompositionEdge> edges;
  for (size_t j = 0; j < cross.size(); ++j) {
    if (cross[j] != kConstituentLine) continue;
    for (size_t i = 0; i < comp.size(); ++i) {
      if (comp[i] != kCompositionLine) continue;
      edges.push_back({static_cast<int>(i), static_cast<int>(j), col ? Axis::kCol : Axis::kRow});
    }
  }
  return edges;
}

CompositionResult RelabelCompositionTable(const Table& table, const Config& cfg,
                                          const CompoundLexicon& lexicon) {
  for (const auto& row : table.cells) {
    if (row.size() != table.num_cols()) {
      throw CompositionError("table " + table.id() + ": ragged grid");
    }
  }
  if (table.row_labels.size() != table.num_rows() ||
      table.col_labels.size() != table.num_cols()) {
    throw CompositionError("table " + table.id() + ": label vectors do not match the grid");
  }
  CompositionResult res;
  res.row_labels = res.archived_row_labels = table.row_labels;
  res.col_labels = res.archived_col_labels = table.col_labels;
  const std::optional<std::string> caption_unit = CompositionUnit(table.caption);

  // Columns first: column-major layout is the default.
  for (Axis axis : {Axis::kCol, Axis::kRow}) {
    auto& labels = axis == Axis::kRow ? res.row_labels : res.col_labels;
    std::map<int, Constituent> found;
    for (size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] != 0 && labels[i] != kCompositionLine) continue;
      const auto line = table.Line(axis, i);
      Constituent c = DetectConstituents(HeadingOf(line, cfg), cfg, lexicon);
      if (c.expression.empty()) {
        if (labels[i] == kCompositionLine) found[static_cast<int>(i)] = {"", HeadingOf(line, cfg)};
        continue;
      }
      if (c.unit.empty()) {
        // A caption unit covers bare headers only for known compounds.
        if (!caption_unit || !lexicon.ContainsFormula(c.expression)) {
          if (labels[i] == kCompositionLine) found[static_cast<int>(i)] = c;
          continue;
        }
        c.unit = *caption_unit;
      }
      std::vector<double> values;
      for (size_t k = HeadingEnd(line, cfg); k < line.size(); ++k) {
        if (auto v = CompositionValue(line[k], cfg)) values.push_back(*v);
      }
      const auto median = Median(values);
      if (labels[i] == kCompositionLine || (median && *median > cfg.composition.median_threshold)) {
        found[static_cast<int>(i)] = c;
      }
    }
    if (found.empty()) continue;
    for (const auto& [i, c] : found) labels[i] = kCompositionLine;
    res.constituents = std::move(found);
    res.orientation = axis;
    res.comp_table = true;
    break;
  }
  if (!res.comp_table) return res;

  const Axis comp_axis = res.orientation;
  auto& cross = comp_axis == Axis::kCol ? res.row_labels : res.col_labels;
  std::vector<double> sums;
  for (size_t j = 0; j < cross.size(); ++j) {
    if (cross[j] != 0 && cross[j] != kConstituentLine) continue;
    std::vector<double> values;
    for (const auto& [i, c] : res.constituents) {
      if (auto v = CompositionValue(Cell(table, comp_axis, i, static_cast<int>(j)), cfg)) {
        values.push_back(*v);
      }
    }
    const auto median = Median(values);
    if (!median || *median < 0) continue;
    cross[j] = kConstituentLine;
    double sum = 0;
    for (double v : values) sum += v;
    sums.push_back(sum);
  }
  res.sum_median = Median(sums);
  res.sum_less_100 = res.sum_median && InSumWindow(*res.sum_median) ? 0 : 1;

  for (size_t j = 0; j < cross.size(); ++j) {
    if (cross[j] != kConstituentLine) continue;
    for (const auto& [i, c] : res.constituents) {
      if (Trim(Cell(table, comp_axis, i, static_cast<int>(j))).empty()) continue;
      res.edges.push_back({i, static_cast<int>(j), comp_axis});
    }
  }
  return res;
}

std::vector<CompositionResult> RelabelCompositionTables(std::vector<Table>& dataset,
                                                        const Config& cfg,
                                                        const CompoundLexicon& lexicon) {
  std::vector<CompositionResult> out;
  out.reserve(dataset.size());
  for (auto& t : dataset) {
    out.push_back(RelabelCompositionTable(t, cfg, lexicon));
    t.row_labels = out.back().row_labels;
    t.col_labels = out.back().col_labels;
    t.comp_table = out.back().comp_table;
    t.sum_less_100 = out.back().sum_less_100;
  }
  return out;
}

nlohmann::ordered_json CompositionTupleToJson(const CompositionTuple& t) {
  nlohmann::ordered_json j;
  j["entity"] = t.entity.ToString();
  j["pii"] = t.entity.pii;
  j["table_index"] = t.entity.table_index;
  j["row"] = t.entity.row;
  j["col"] = t.entity.col;
  j["material_id"] = t.entity.material_id;
  j["constituent"] = t.constituent;
  j["value"] = t.value;
  j["unit"] = t.unit;
  return j;
}

CompositionTuple CompositionTupleFromJson(const nlohmann::json& j) {
  CompositionTuple t;
  t.entity = MakeEntityId(j.at("pii").get<std::string>(), j.at("table_index").get<int>(),
                          j.at("row").get<int>(), j.at("col").get<int>(),
                          j.value("material_id", std::string()), EntityKind::kComposition);
  t.constituent = j.at("constituent").get<std::string>();
  t.value = j.at("value").get<double>();
  t.unit = j.value("unit", std::string());
  return t;
}

std::vector<CompositionTuple> ExtractCompositions(const Table& table,
                                                  const CompositionResult& result,
                                                  const Config& cfg) {
  std::vector<CompositionTuple> out;
  if (!result.comp_table) return out;
  const Axis axis = result.orientation;
  const auto& comp = axis == Axis::kCol ? result.col_labels : result.row_labels;
  std::optional<std::vector<std::string>> gid;
  for (size_t i = 0; i < comp.size(); ++i) {
    if (comp[i] == kGidLine) {
      gid = table.Line(axis, i);
      break;
    }
  }
  for (const auto& e : result.edges) {
    const auto v = CompositionValue(Cell(table, axis, e.constituent_pos, e.value_pos), cfg);
    if (!v || *v <= 0) continue;
    const auto& c = result.constituents.at(e.constituent_pos);
    const int row = axis == Axis::kCol ? e.value_pos : e.constituent_pos;
    const int col = axis == Axis::kCol ? e.constituent_pos : e.value_pos;
    CompositionTuple t;
    const std::string material = gid ? std::string(Trim((*gid)[e.value_pos])) : std::string();
    t.entity = MakeEntityId(table.pii, table.table_index, row, col, material,
                            EntityKind::kComposition, &table);
    t.constituent = c.expression;
    t.value = *v;
    t.unit = c.unit;
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace tabkb
