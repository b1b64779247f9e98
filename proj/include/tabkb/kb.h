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

#ifndef TABKB_KB_H_
#define TABKB_KB_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlohmann/json.hpp"
#include "tabkb/composition.h"
#include "tabkb/config.h"
#include "tabkb/postprocess.h"
#include "tabkb/table.h"

namespace tabkb {

class KbError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QueryError : public KbError {
 public:
  using KbError::KbError;
};

inline constexpr std::string_view kKbSchema = "tabkb.kb";
inline constexpr int kKbVersion = 1;

enum class LinkKind { kIntra, kInter, kUnlinkedProperty, kUnlinkedComposition };

std::string_view LinkKindName(LinkKind kind);
std::optional<LinkKind> LinkKindFromName(std::string_view name);

// Extracted entities of one table.
struct TableExtraction {
  std::string pii;
  int table_index = 0;
  Axis orientation = Axis::kCol;
  std::vector<CompositionTuple> compositions;
  std::vector<ExtractedTuple> properties;
};

struct KbRecord {
  std::string pii;
  std::string material_id;
  LinkKind link_kind = LinkKind::kIntra;
  // Source tables as (table index, orientation), in first-seen order.
  std::vector<std::pair<int, Axis>> tables;
  std::vector<CompositionTuple> compositions;
  std::vector<ExtractedTuple> properties;

  // constituent -> (value, unit); the first tuple per constituent wins.
  std::map<std::string, std::pair<double, std::string>> CompositionMap() const;
  bool operator==(const KbRecord&) const = default;
};

struct LinkedPair {
  std::string composition;  // entity id
  std::string property;     // entity id
  LinkKind kind = LinkKind::kIntra;

  bool operator==(const LinkedPair&) const = default;
  auto operator<=>(const LinkedPair&) const = default;
};

// Trim and ASCII case-fold.
std::string NormalizeGid(std::string_view gid);

// Position on the cross axis: the row for column-oriented tables and the
// column for row-oriented ones.
int MaterialIndex(const EntityId& id, Axis orientation);

// Pairs by shared cross-axis index within one table.
std::vector<LinkedPair> LinkIntraTable(const TableExtraction& table);

// Pairs by equal normalized gid across distinct tables of one article.
// Entities in `skip_properties` (entity ids) are not offered.
std::vector<LinkedPair> LinkInterTable(const std::vector<TableExtraction>& article,
                                       const std::vector<std::string>& skip_properties = {});

// Records for a whole corpus. Intra links take precedence; what remains is
// kept as unlinked-property and unlinked-composition records.
std::vector<KbRecord> BuildKnowledgeBase(const std::vector<TableExtraction>& tables);

// Extractions recovered from records, deduplicated by entity id.
std::vector<TableExtraction> ExtractionsFromRecords(const std::vector<KbRecord>& records);

// BuildKnowledgeBase(ExtractionsFromRecords(records)).
std::vector<KbRecord> Relink(const std::vector<KbRecord>& records);

std::vector<LinkedPair> RecordPairs(const KbRecord& record);

nlohmann::ordered_json RecordToJson(const KbRecord& record);
KbRecord RecordFromJson(const nlohmann::json& j);

// Header line plus one record per line.
std::string SerializeKb(const std::vector<KbRecord>& records);
std::vector<KbRecord> ParseKb(std::string_view bytes);

// Writes `path` and the `path`.idx sidecar (normalized gid, tab, comma
// separated byte offsets of record lines).
void WriteKb(const std::string& path, const std::vector<KbRecord>& records);
std::vector<KbRecord> ReadKb(const std::string& path);
std::string KbIndex(const std::vector<KbRecord>& records);

enum class Comparator { kGe, kGt, kLe, kLt, kEq };

struct Predicate {
  int property = 0;
  Comparator op = Comparator::kGe;
  double threshold = 0.0;
  std::string unit;  // canonical; empty for unitless properties

  bool Holds(double v) const;
};

// "property>=value@unit"; the unit part is optional for unitless
// properties. Throws QueryError.
Predicate ParsePredicate(std::string_view text, const Config& cfg);

// Records holding, for every predicate, a tuple of that property in the
// predicate's unit that satisfies it.
std::vector<KbRecord> Screen(const std::vector<KbRecord>& records,
                             const std::vector<Predicate>& predicates);

// Tab-separated listing: pii, material id, link kind, composition, then one
// column per predicate property.
std::string ScreenTable(const std::vector<KbRecord>& records,
                        const std::vector<Predicate>& predicates);

}  // namespace tabkb

#endif  // TABKB_KB_H_
