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

#ifndef TABKB_DISTANT_SUPERVISION_H_
#define TABKB_DISTANT_SUPERVISION_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tabkb/config.h"
#include "tabkb/table.h"

namespace tabkb {

class DatabaseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReferenceValue {
  double value = 0.0;
  std::string unit;
};

struct ReferenceRecord {
  std::string id;
  std::map<std::string, double> composition;
  std::map<int, ReferenceValue> properties;  // keyed by label code
};

struct ReferenceDatabase {
  std::vector<ReferenceRecord> records;
};

// One record per line: {"id", "composition": {name: fraction},
// "properties": {key: {"value", "unit"}}}. Throws DatabaseError with the
// line number on bad records.
ReferenceDatabase ParseReferenceDatabase(std::string_view bytes);
ReferenceDatabase ReadReferenceDatabase(const std::string& path);
std::string SerializeReferenceDatabase(const ReferenceDatabase& db);

enum class Transform { kIdentity, kTimes1000, kDiv1000, kPlus273, kMinus273 };

std::string_view TransformName(Transform t);
double ApplyTransform(Transform t, double v);
// Transforms tried for a property, identity first.
std::vector<Transform> TransformsFor(int property);

// Unit the observed value is in, given the reference unit and the
// transform that mapped it onto the reference.
std::string InferObservedUnit(Transform t, std::string_view reference_unit);

struct LineMatch {
  Axis axis = Axis::kCol;
  int index = 0;
  int label = 0;  // property code, or 2 for a composition line
  int matches = 0;
  int numeric = 0;
  double density() const { return numeric == 0 ? 0.0 : static_cast<double>(matches) / numeric; }
};

struct CandidateTuple {
  int label = 0;
  int row = 0;
  int col = 0;
  size_t db_index = 0;
  double observed = 0.0;
  std::string unit;
};

struct AlignmentResult {
  // Only properties with at least one match under the kept transform.
  std::map<int, Transform> transforms;
  // Best label per line on both axes, including lines below the density
  // threshold.
  std::vector<LineMatch> lines;
  std::vector<CandidateTuple> tuples;
  std::optional<Axis> orientation;
  bool retained = false;
  std::vector<int> row_labels;
  std::vector<int> col_labels;
  int row_matches = 0;
  int col_matches = 0;
};

bool ValueMatches(double observed, double reference, double rel_tolerance);

// Weak labels for `table` from `db`. Existing non-zero labels are kept.
AlignmentResult AlignTable(const Table& table, const ReferenceDatabase& db,
                           const DistantSupervisionConfig& cfg);

}  // namespace tabkb

#endif  // TABKB_DISTANT_SUPERVISION_H_
