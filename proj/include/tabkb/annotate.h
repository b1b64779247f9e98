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

#ifndef TABKB_ANNOTATE_H_
#define TABKB_ANNOTATE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tabkb/config.h"
#include "tabkb/table.h"

namespace tabkb {

// A header split into its text and unit parts.
struct HeaderParts {
  std::string heading;  // heading cells joined by a space
  std::string content;  // normalized, brackets and unit tail removed
  std::optional<std::string> unit_text;
  std::vector<double> values;
};

// Heading cells are those before the first numeric cell; a line with no
// numeric cell is headed by its first cell.
HeaderParts SplitHeader(std::span<const std::string> line, const UnitLexicon& lex);

// First property whose canonical phrase occurs in `header`, 0 otherwise.
// A disqualifying token for that property blocks the match.
int DirectMatch(std::string_view header, const Config& cfg);
bool DirectMatchFor(std::string_view header, int property, const Config& cfg);
bool IsSymbolAlias(std::string_view content, int property, const Config& cfg);

struct ValidationSignals {
  bool unit = false;
  bool range = false;
  bool caption = false;
  bool symbol = false;
  bool name = false;
  int Score() const { return unit + range + caption + symbol + name; }
};

ValidationSignals PropertySignals(int property, const HeaderParts& header,
                                  std::string_view caption, const Config& cfg);

bool AcceptSignals(const ValidationSignals& s, int threshold);

// Signal fusion: accept iff the number of firing signals reaches t_p.
bool ValidateProperty(int property, const HeaderParts& header, std::string_view caption,
                      const Config& cfg);

struct AnnotationResult {
  std::vector<int> row_labels;
  std::vector<int> col_labels;
  int assigned = 0;
  int suppressed = 0;
  std::optional<Axis> suppressed_axis;
};

// Fills zero labels by direct phrase match, then symbol plus validation,
// then suppresses property labels on the losing axis and tags a gid line.
AnnotationResult AnnotateTable(const Table& table, const Config& cfg);

// At least three numeric cells in the first row (or column), ignoring the
// corner cell.
bool FirstLineHasNumbers(const Table& table, Axis axis);

}  // namespace tabkb

#endif  // TABKB_ANNOTATE_H_
