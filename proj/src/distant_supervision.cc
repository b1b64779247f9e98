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

#include "tabkb/distant_supervision.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

#include "nlohmann/json.hpp"
#include "tabkb/labels.h"
#include "tabkb/numeric.h"
#include "tabkb/text.h"

namespace tabkb {
namespace {

constexpr int kCompositionLabel = static_cast<int>(Label::kComposition);

bool IsTemperature(int property) {
  return property >= static_cast<int>(Label::kAnnealingPoint) &&
         property <= static_cast<int>(Label::kSofteningPoint);
}

struct RefEntry {
  double value;
  size_t index;
  const std::string* unit;
};

// Relative slack for "exact" equality, absorbing decimal round trips.
constexpr double kExactTolerance = 1e-9;

// Reference entry matching `observed` after `t`: the first exact match,
// else the first within `tol`, else nullptr.
const RefEntry* FindMatch(const std::vector<RefEntry>& refs, Transform t, double observed,
                          double tol, bool* exact = nullptr) {
  const double v = ApplyTransform(t, observed);
  for (const RefEntry& r : refs) {
    if (ValueMatches(v, r.value, kExactTolerance)) {
      if (exact != nullptr) *exact = true;
      return &r;
    }
  }
  if (exact != nullptr) *exact = false;
  for (const RefEntry& r : refs) {
    if (ValueMatches(v, r.value, tol)) return &r;
  }
  return nullptr;
}

// Constituent name in a composition heading: brackets and composition unit
// tokens removed.
std::string ConstituentKey(const std::vector<std::string>& line, size_t heading_end) {
  std::string heading;
  for (size_t i = 0; i < heading_end; ++i) {
    if (!heading.empty()) heading += ' ';
    heading += line[i];
  }
  std::string key(Trim(RemoveBracketed(NormalizeCompat(heading))));
  for (const char* suffix : {"mol%", "wt%", "at%", "mol.%", "wt.%", "at.%"}) {
    const std::string s(suffix);
    if (key.size() > s.size() && key.compare(key.size() - s.size(), s.size(), s) == 0) {
      key = std::string(Trim(std::string_view(key).substr(0, key.size() - s.size())));
    }
  }
  return key;
}

struct CellMatch {
  const RefEntry* entry = nullptr;
};

}  // namespace

ReferenceDatabase ParseReferenceDatabase(std::string_view bytes) {
  ReferenceDatabase db;
  std::istringstream in{std::string(bytes)};
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw DatabaseError("reference database line " + std::to_string(line_no) + ": " + msg);
    };
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      fail(e.what());
    }
    if (!j.is_object()) fail("record is not an object");
    ReferenceRecord rec;
    if (j.contains("id")) {
      if (!j["id"].is_string()) fail("'id' is not a string");
      rec.id = j["id"].get<std::string>();
    }
    if (j.contains("composition")) {
      if (!j["composition"].is_object()) fail("'composition' is not an object");
      for (const auto& [name, v] : j["composition"].items()) {
        if (!v.is_number()) fail("fraction of " + name + " is not a number");
        const double f = v.get<double>();
        if (!std::isfinite(f) || f < 0.0) fail("fraction of " + name + " is negative");
        rec.composition[name] = f;
      }
    }
    if (j.contains("properties")) {
      if (!j["properties"].is_object()) fail("'properties' is not an object");
      for (const auto& [name, v] : j["properties"].items()) {
        const auto code = LabelFromKey(name);
        if (!code || !IsProperty(*code)) fail("unknown property " + name);
        if (!v.is_object() || !v.contains("value") || !v["value"].is_number()) {
          fail("property " + name + " has no numeric value");
        }
        ReferenceValue rv;
        rv.value = v["value"].get<double>();
        if (!std::isfinite(rv.value)) fail("property " + name + " is not finite");
        if (v.contains("unit") && v["unit"].is_string()) rv.unit = v["unit"].get<std::string>();
        rec.properties[*code] = rv;
      }
    }
    db.records.push_back(std::move(rec));
  }
  return db;
}

ReferenceDatabase ReadReferenceDatabase(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatabaseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseReferenceDatabase(ss.str());
}

std::string SerializeReferenceDatabase(const ReferenceDatabase& db) {
  std::string out;
  for (const auto& rec : db.records) {
    nlohmann::ordered_json j;
    j["id"] = rec.id;
    j["composition"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : rec.composition) j["composition"][k] = v;
    j["properties"] = nlohmann::ordered_json::object();
    for (const auto& [code, v] : rec.properties) {
      j["properties"][std::string(LabelKey(code))] = {{"value", v.value}, {"unit", v.unit}};
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string_view TransformName(Transform t) {
  switch (t) {
    case Transform::kIdentity: return "identity";
    case Transform::kTimes1000: return "x1000";
    case Transform::kDiv1000: return "/1000";
    case Transform::kPlus273: return "+273";
    case Transform::kMinus273: return "-273";
  }
  return "identity";
}

double ApplyTransform(Transform t, double v) {
  switch (t) {
    case Transform::kIdentity: return v;
    case Transform::kTimes1000: return v * 1000.0;
    case Transform::kDiv1000: return v / 1000.0;
    case Transform::kPlus273: return v + 273.0;
    case Transform::kMinus273: return v - 273.0;
  }
  return v;
}

std::vector<Transform> TransformsFor(int property) {
  if (property == static_cast<int>(Label::kDensity)) {
    return {Transform::kIdentity, Transform::kTimes1000, Transform::kDiv1000};
  }
  if (IsTemperature(property)) {
    return {Transform::kIdentity, Transform::kPlus273, Transform::kMinus273};
  }
  return {Transform::kIdentity};
}

std::string InferObservedUnit(Transform t, std::string_view reference_unit) {
  if (t == Transform::kTimes1000 && reference_unit == "kg/m3") return "g/cm3";
  if (t == Transform::kDiv1000 && reference_unit == "g/cm3") return "kg/m3";
  if (t == Transform::kPlus273 && reference_unit == "K") return "degC";
  if (t == Transform::kMinus273 && reference_unit == "degC") return "K";
  return std::string(reference_unit);
}

bool ValueMatches(double observed, double reference, double rel_tolerance) {
  if (observed == reference) return true;
  return std::fabs(observed - reference) <= rel_tolerance * std::fabs(reference);
}

AlignmentResult AlignTable(const Table& table, const ReferenceDatabase& db,
                           const DistantSupervisionConfig& cfg) {
  AlignmentResult result;
  result.row_labels = table.row_labels;
  result.col_labels = table.col_labels;
  const size_t rows = table.num_rows();
  const size_t cols = table.num_cols();

  std::vector<std::optional<double>> grid(rows * cols);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      if (auto v = ParseValueCell(table.cells[r][c])) grid[r * cols + c] = v->value;
    }
  }

  // matched[label] holds, per cell, the first matching reference entry.
  std::map<int, std::vector<CellMatch>> matched;
  std::vector<std::vector<RefEntry>> refs(kNumClasses);
  for (size_t i = 0; i < db.records.size(); ++i) {
    for (const auto& [code, v] : db.records[i].properties) {
      refs[code].push_back({v.value, i, &v.unit});
    }
  }
  for (int p = kFirstProperty; p <= kLastProperty; ++p) {
    if (refs[p].empty()) continue;
    auto tol_it = cfg.tolerance.find(p);
    const double tol = tol_it == cfg.tolerance.end() ? cfg.default_tolerance : tol_it->second;
    // A transform is scored by its strongest line, then by how many matches
    // are exact, then by its total. Incidental hits scattered over other
    // lines cannot outvote a line that matches throughout.
    Transform best = Transform::kIdentity;
    std::tuple<int, int, int> best_score{-1, -1, -1};
    for (Transform t : TransformsFor(p)) {
      std::vector<int> per_row(rows, 0), per_col(cols, 0);
      int total = 0, exact_total = 0;
      for (size_t k = 0; k < grid.size(); ++k) {
        bool exact = false;
        if (grid[k] && FindMatch(refs[p], t, *grid[k], tol, &exact) != nullptr) {
          ++per_row[k / cols];
          ++per_col[k % cols];
          ++total;
          exact_total += exact;
        }
      }
      const int strongest = std::max(*std::max_element(per_row.begin(), per_row.end()),
                                     *std::max_element(per_col.begin(), per_col.end()));
      const std::tuple<int, int, int> score{strongest, exact_total, total};
      if (score > best_score) {
        best = t;
        best_score = score;
      }
    }
    const int best_count = std::get<2>(best_score);
    if (best_count <= 0) continue;
    result.transforms[p] = best;
    auto& cells = matched[p];
    cells.resize(grid.size());
    for (size_t k = 0; k < grid.size(); ++k) {
      if (grid[k]) cells[k].entry = FindMatch(refs[p], best, *grid[k], tol);
    }
  }

  // Composition lines: heading names a constituent present in the database.
  std::vector<std::vector<RefEntry>> comp_storage;
  static const std::string kNoUnit;
  auto composition_matches = [&](Axis axis, size_t i) {
    std::vector<const RefEntry*> out;
    const auto line = table.Line(axis, i);
    const size_t heading_end = FirstNumericCell(line);
    if (heading_end == 0 || heading_end == line.size()) return out;
    const std::string key = ConstituentKey(line, heading_end);
    if (key.empty()) return out;
    std::vector<RefEntry> entries;
    for (size_t r = 0; r < db.records.size(); ++r) {
      auto it = db.records[r].composition.find(key);
      if (it != db.records[r].composition.end()) entries.push_back({it->second, r, &kNoUnit});
    }
    if (entries.empty()) return out;
    comp_storage.push_back(std::move(entries));
    const auto& stored = comp_storage.back();
    out.assign(line.size(), nullptr);
    for (size_t k = heading_end; k < line.size(); ++k) {
      auto v = ParseValueCell(line[k]);
      if (!v) continue;
      for (const RefEntry& e : stored) {
        if (std::fabs(v->value - e.value) <= cfg.composition_abs_tolerance) {
          out[k] = &e;
          break;
        }
      }
    }
    return out;
  };

  struct Passing {
    LineMatch match;
    std::vector<std::pair<size_t, const RefEntry*>> hits;  // position along the line
  };
  std::vector<Passing> passing[2];
  comp_storage.reserve(rows + cols);
  for (Axis axis : {Axis::kRow, Axis::kCol}) {
    const size_t n = table.Count(axis);
    const size_t len = axis == Axis::kRow ? cols : rows;
    for (size_t i = 0; i < n; ++i) {
      auto cell_index = [&](size_t k) { return axis == Axis::kRow ? i * cols + k : k * cols + i; };
      int numeric = 0;
      for (size_t k = 0; k < len; ++k) numeric += grid[cell_index(k)].has_value();
      // One value cannot establish a density.
      if (numeric < 2) continue;

      LineMatch best{axis, static_cast<int>(i), 0, 0, numeric};
      std::vector<std::pair<size_t, const RefEntry*>> best_hits;
      auto consider = [&](int label, std::vector<std::pair<size_t, const RefEntry*>> hits) {
        if (static_cast<int>(hits.size()) > best.matches) {
          best.label = label;
          best.matches = static_cast<int>(hits.size());
          best_hits = std::move(hits);
        }
      };
      const auto comp = composition_matches(axis, i);
      if (!comp.empty()) {
        std::vector<std::pair<size_t, const RefEntry*>> hits;
        for (size_t k = 0; k < comp.size(); ++k) {
          if (comp[k] != nullptr) hits.emplace_back(k, comp[k]);
        }
        consider(kCompositionLabel, std::move(hits));
      }
      for (const auto& [p, cells] : matched) {
        std::vector<std::pair<size_t, const RefEntry*>> hits;
        for (size_t k = 0; k < len; ++k) {
          if (const RefEntry* e = cells[cell_index(k)].entry) hits.emplace_back(k, e);
        }
        consider(p, std::move(hits));
      }
      result.lines.push_back(best);
      if (best.matches > 0 && best.density() >= cfg.min_density) {
        passing[axis == Axis::kRow ? 0 : 1].push_back({best, std::move(best_hits)});
      }
    }
  }

  int totals[2] = {0, 0};
  for (int a = 0; a < 2; ++a) {
    for (const auto& p : passing[a]) totals[a] += p.match.matches;
  }
  result.row_matches = totals[0];
  result.col_matches = totals[1];
  if (passing[0].empty() && passing[1].empty()) return result;

  // Dense matches concentrate on the property axis: compare mean matches per
  // passing line. Ties go to columns.
  auto mean = [&](int a) {
    return passing[a].empty() ? 0.0 : static_cast<double>(totals[a]) / passing[a].size();
  };
  const int chosen = mean(0) > mean(1) ? 0 : 1;
  const Axis axis = chosen == 0 ? Axis::kRow : Axis::kCol;
  result.orientation = axis;
  auto& labels = axis == Axis::kRow ? result.row_labels : result.col_labels;
  for (const auto& p : passing[chosen]) {
    int& label = labels[p.match.index];
    if (label == 0) {
      label = p.match.label;
      result.retained = true;
    }
    if (label != p.match.label) continue;
    const Transform t = p.match.label == kCompositionLabel ? Transform::kIdentity
                                                           : result.transforms[p.match.label];
    for (const auto& [k, entry] : p.hits) {
      CandidateTuple tuple;
      tuple.label = p.match.label;
      tuple.row = axis == Axis::kRow ? p.match.index : static_cast<int>(k);
      tuple.col = axis == Axis::kRow ? static_cast<int>(k) : p.match.index;
      tuple.db_index = entry->index;
      tuple.observed = *grid[tuple.row * cols + tuple.col];
      tuple.unit = InferObservedUnit(t, *entry->unit);
      result.tuples.push_back(std::move(tuple));
    }
  }
  return result;
}

}  // namespace tabkb
