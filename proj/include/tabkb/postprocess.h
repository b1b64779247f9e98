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

#ifndef TABKB_POSTPROCESS_H_
#define TABKB_POSTPROCESS_H_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlohmann/json.hpp"
#include "tabkb/config.h"
#include "tabkb/table.h"

namespace tabkb {

enum class ValueKind { kSingle, kMeanOfRange };

struct ExtractedTuple {
  EntityId entity;
  int property = 0;
  double value = 0.0;
  std::string unit;  // canonical, or empty
  ValueKind kind = ValueKind::kSingle;

  bool operator==(const ExtractedTuple&) const = default;
};

nlohmann::ordered_json TupleToJson(const ExtractedTuple& t);
ExtractedTuple TupleFromJson(const nlohmann::json& j);
std::string SerializeTuples(const std::vector<ExtractedTuple>& tuples);
std::vector<ExtractedTuple> ParseTuples(std::string_view bytes);

// Full-text verification for overloaded headings. The default denies.
using ArticleCheck = std::function<bool(std::string_view pii, int table_index, int property)>;

// Whether `label` survives the heading and caption: composition units,
// disqualifying tokens, ambiguous and overloaded headings.
bool CheckHeading(std::string_view pii, int table_index, std::span<const std::string> line,
                  std::string_view caption, int label, const Config& cfg,
                  const ArticleCheck& article_check = nullptr);

// Median of the line's values lies inside the property's median range.
bool CheckWhetherInLimit(std::span<const double> values, int property, const Config& cfg);

// Exponent carried by a ValueFixMap match in `heading`, if any.
std::optional<int> ValueFixExponent(std::string_view heading, int property, const Config& cfg);

// Whether a ContextMap rule fires for `heading` with `caption` and `unit`.
bool ContextRuleFires(const ContextRule& rule, std::string_view heading, std::string_view caption,
                      const std::optional<std::string>& unit);

// Range filter (R_prop) then disallowed (property, unit) pairs (U_invalid).
// Order is preserved.
std::vector<ExtractedTuple> TempCutOff(const std::vector<ExtractedTuple>& tuples,
                                       const Config& cfg);
std::vector<ExtractedTuple> RemoveTuplesOnUnits(const std::vector<ExtractedTuple>& tuples,
                                                const Config& cfg);
std::vector<ExtractedTuple> FilterTuples(const std::vector<ExtractedTuple>& tuples,
                                         const Config& cfg);

struct RuleFiring {
  std::string table;
  Axis axis = Axis::kCol;
  int index = 0;
  std::string rule;
  int from = 0;
  int to = 0;
  std::string detail;
};

nlohmann::ordered_json RuleFiringToJson(const RuleFiring& f);

struct PostprocessOptions {
  ArticleCheck article_check;
};

struct PostprocessResult {
  std::vector<int> row_labels;
  std::vector<int> col_labels;
  Axis orientation = Axis::kCol;
  std::vector<ExtractedTuple> tuples;
  std::vector<RuleFiring> audit;
  int removed_by_range = 0;
  int removed_by_unit = 0;
};

// Orientation from the share of role/property labels per axis, then per
// header: heading veto, direct-match rescue, PatternMap and ContextMap
// overrides, exponent repair and the median veto. Tuples are generated from
// the corrected labels and filtered.
PostprocessResult PostProcessTable(const Table& table, const std::vector<int>& row_labels,
                                   const std::vector<int>& col_labels, const Config& cfg,
                                   const PostprocessOptions& options = {});

}  // namespace tabkb

#endif  // TABKB_POSTPROCESS_H_
