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

#ifndef TABKB_TABLE_H_
#define TABKB_TABLE_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nlohmann/json.hpp"

namespace tabkb {

enum class Axis { kRow, kCol };

inline std::string_view AxisName(Axis axis) {
  return axis == Axis::kRow ? "row" : "col";
}

// A parsed scientific table. cells[r][c] is the text of row r, column c;
// row 0 of a column-oriented table and column 0 of a row-oriented one hold
// the heading text.
struct Table {
  std::string pii;
  int table_index = 0;
  std::string caption;
  std::vector<std::vector<std::string>> cells;
  std::vector<int> row_labels;
  std::vector<int> col_labels;
  std::optional<int> sum_less_100;
  bool comp_table = false;

  size_t num_rows() const { return cells.size(); }
  size_t num_cols() const { return cells.empty() ? 0 : cells.front().size(); }
  size_t num_cells() const { return num_rows() * num_cols(); }

  // "PII_TID", used in diagnostics.
  std::string id() const;

  // Cells of row i (axis kRow) or column i (axis kCol).
  std::vector<std::string> Line(Axis axis, size_t i) const;
  const std::vector<int>& Labels(Axis axis) const {
    return axis == Axis::kRow ? row_labels : col_labels;
  }
  std::vector<int>& Labels(Axis axis) {
    return axis == Axis::kRow ? row_labels : col_labels;
  }
  size_t Count(Axis axis) const {
    return axis == Axis::kRow ? num_rows() : num_cols();
  }

  bool operator==(const Table&) const = default;
};

class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed document: carries the byte offset of the offending record.
class DocumentParseError : public TableError {
 public:
  DocumentParseError(const std::string& what, size_t byte_offset)
      : TableError(what + " (at byte " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}
  size_t byte_offset() const { return byte_offset_; }

 private:
  size_t byte_offset_;
};

// Ragged grid or invalid label vector.
class RectangularityError : public TableError {
 public:
  using TableError::TableError;
};

// Throws RectangularityError when cells are ragged, empty, or the label
// vectors have the wrong length / invalid codes.
void ValidateTable(const Table& table);

// Parses one line-delimited JSON table document. Blank lines are ignored.
std::vector<Table> ParseTableDocument(std::string_view bytes);
std::vector<Table> ReadTableDocument(const std::string& path);

nlohmann::ordered_json TableToJson(const Table& table);
Table TableFromJson(const nlohmann::json& j);

std::string SerializeTableDocument(const std::vector<Table>& tables);
void WriteTableDocument(const std::string& path, const std::vector<Table>& tables);

enum class EntityKind { kProperty, kComposition };

// Source-traceable identifier of an extracted entity.
struct EntityId {
  std::string pii;
  int table_index = 0;
  int row = 0;
  int col = 0;
  std::string material_id;
  EntityKind kind = EntityKind::kProperty;

  // PII_TID_R_C_ID for properties, PII_TID_R_C_0_ID for compositions.
  std::string ToString() const;

  bool operator==(const EntityId&) const = default;
  auto operator<=>(const EntityId&) const = default;
};

class BoundsError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Internal underscores of material_id become hyphens so the serialized
// form stays injective. Throws BoundsError when (row, col) lies outside
// `table` (when given).
EntityId MakeEntityId(std::string_view pii, int table_index, int row, int col,
                      std::string_view material_id, EntityKind kind,
                      const Table* table = nullptr);

std::string SanitizeMaterialId(std::string_view material_id);

}  // namespace tabkb

#endif  // TABKB_TABLE_H_
