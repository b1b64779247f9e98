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

#ifndef TABKB_COMPOSITION_H_
#define TABKB_COMPOSITION_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nlohmann/json.hpp"
#include "tabkb/config.h"
#include "tabkb/table.h"

namespace tabkb {

class CompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Known compounds and their aliases. Lookups are case-insensitive for
// aliases and exact for formulas.
class CompoundLexicon {
 public:
  void Add(std::string formula, const std::vector<std::string>& aliases);
  // Formula for `text` if it names a known compound.
  std::optional<std::string> Lookup(std::string_view text) const;
  bool ContainsFormula(std::string_view formula) const;
  size_t size() const { return formulas_.size(); }

 private:
  std::map<std::string, std::string, std::less<>> formulas_;  // formula -> formula
  std::map<std::string, std::string, std::less<>> aliases_;   // lowercase alias -> formula
};

// Format: one compound per line, formula then optional comma-separated
// aliases after a tab. '#' starts a comment.
CompoundLexicon ParseCompoundLexicon(std::string_view text);
CompoundLexicon LoadCompoundLexicon(const std::string& path);
const CompoundLexicon& DefaultCompounds();

// Element-symbol grammar: element symbols with optional numeric
// subscripts, parenthesized groups, hyphen or middle-dot joined parts.
bool IsChemicalFormula(std::string_view text);

struct Constituent {
  std::string unit;        // "mol%", "wt%", "at%" or empty
  std::string expression;  // formula, or empty

  bool empty() const { return unit.empty() && expression.empty(); }
  bool operator==(const Constituent&) const = default;
};

// Canonical composition unit for a token such as "mol.%" or "(wt %)".
std::optional<std::string> CompositionUnit(std::string_view text);

// Unit token and constituent expression in a header. Exclusion tokens
// veto the whole header.
Constituent DetectConstituents(std::string_view header, const Config& cfg,
                               const CompoundLexicon& lexicon = DefaultCompounds());

struct CompositionEdge {
  int constituent_pos = 0;  // index of the label-2 line
  int value_pos = 0;        // index of the label-1 line
  Axis orientation = Axis::kCol;

  bool operator==(const CompositionEdge&) const = default;
};

struct CompositionResult {
  std::vector<int> row_labels;
  std::vector<int> col_labels;
  // Labels before relabeling.
  std::vector<int> archived_row_labels;
  std::vector<int> archived_col_labels;
  bool comp_table = false;
  std::optional<int> sum_less_100;
  std::optional<double> sum_median;
  Axis orientation = Axis::kCol;
  std::vector<CompositionEdge> edges;
  // Constituent per label-2 line index.
  std::map<int, Constituent> constituents;
};

// (0.95, 1.05) or (95, 105).
bool InSumWindow(double median);

CompositionResult RelabelCompositionTable(const Table& table, const Config& cfg,
                                          const CompoundLexicon& lexicon = DefaultCompounds());

// Applies RelabelCompositionTable to every table in place.
std::vector<CompositionResult> RelabelCompositionTables(
    std::vector<Table>& dataset, const Config& cfg,
    const CompoundLexicon& lexicon = DefaultCompounds());

// Every (label-1, label-2) pair; the reference enumeration for edge lists.
std::vector<CompositionEdge> EnumerateEdges(const std::vector<int>& row_labels,
                                            const std::vector<int>& col_labels);

struct CompositionTuple {
  EntityId entity;
  std::string constituent;
  double value = 0.0;
  std::string unit;

  bool operator==(const CompositionTuple&) const = default;
};

nlohmann::ordered_json CompositionTupleToJson(const CompositionTuple& t);
CompositionTuple CompositionTupleFromJson(const nlohmann::json& j);

// One tuple per edge whose cell holds a nonzero value.
std::vector<CompositionTuple> ExtractCompositions(const Table& table,
                                                  const CompositionResult& result,
                                                  const Config& cfg);

}  // namespace tabkb

#endif  // TABKB_COMPOSITION_H_
