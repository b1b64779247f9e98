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

#include "tabkb/table.h"

#include <fstream>
#include <sstream>

#include "tabkb/labels.h"

namespace tabkb {

std::string Table::id() const { return pii + "_" + std::to_string(table_index); }

std::vector<std::string> Table::Line(Axis axis, size_t i) const {
  if (axis == Axis::kRow) return cells.at(i);
  std::vector<std::string> out;
  out.reserve(num_rows());
  for (const auto& row : cells) out.push_back(row.at(i));
  return out;
}

void ValidateTable(const Table& table) {
  if (table.cells.empty()) {
    throw RectangularityError("table " + table.id() + ": no rows");
  }
  const size_t cols = table.cells.front().size();
  if (cols == 0) throw RectangularityError("table " + table.id() + ": no columns");
  for (size_t r = 0; r < table.cells.size(); ++r) {
    if (table.cells[r].size() != cols) {
      throw RectangularityError("table " + table.id() + ": row " + std::to_string(r) +
                                " has " + std::to_string(table.cells[r].size()) +
                                " cells, expected " + std::to_string(cols));
    }
  }
  auto check_labels = [&](const std::vector<int>& labels, size_t n, const char* what) {
    if (labels.size() != n) {
      throw RectangularityError("table " + table.id() + ": " + what + " has length " +
                                std::to_string(labels.size()) + ", expected " +
                                std::to_string(n));
    }
    for (int code : labels) {
      if (!IsValidLabel(code)) {
        throw RectangularityError("table " + table.id() + ": invalid label code " +
                                  std::to_string(code) + " in " + what);
      }
    }
  };
  check_labels(table.row_labels, table.num_rows(), "row_labels");
  check_labels(table.col_labels, table.num_cols(), "col_labels");
}

Table TableFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw TableError("table record is not an object");
  Table t;
  if (!j.contains("pii") || !j["pii"].is_string()) {
    throw TableError("missing string field 'pii'");
  }
  t.pii = j["pii"].get<std::string>();
  if (!j.contains("table_index") || !j["table_index"].is_number_integer() ||
      j["table_index"].get<long long>() < 0) {
    throw TableError("missing non-negative integer field 'table_index'");
  }
  t.table_index = j["table_index"].get<int>();
  if (j.contains("caption")) {
    if (!j["caption"].is_string()) throw TableError("field 'caption' is not a string");
    t.caption = j["caption"].get<std::string>();
  }
  if (!j.contains("cells") || !j["cells"].is_array()) {
    throw TableError("missing array field 'cells'");
  }
  for (const auto& row : j["cells"]) {
    if (!row.is_array()) throw TableError("'cells' row is not an array");
    std::vector<std::string> r;
    r.reserve(row.size());
    for (const auto& cell : row) {
      if (!cell.is_string()) throw TableError("cell is not a string");
      r.push_back(cell.get<std::string>());
    }
    t.cells.push_back(std::move(r));
  }
  auto read_labels = [&](const char* key, size_t n) {
    if (!j.contains(key) || j[key].is_null()) return std::vector<int>(n, 0);
    if (!j[key].is_array()) throw TableError(std::string("'") + key + "' is not an array");
    std::vector<int> labels;
    for (const auto& v : j[key]) {
      if (!v.is_number_integer()) throw TableError(std::string("'") + key + "' entry is not an integer");
      labels.push_back(v.get<int>());
    }
    return labels;
  };
  // Rectangularity is checked before label lengths so ragged rows are reported first.
  if (!t.cells.empty()) {
    const size_t cols = t.cells.front().size();
    for (size_t r = 0; r < t.cells.size(); ++r) {
      if (t.cells[r].size() != cols) {
        throw RectangularityError("table " + t.id() + ": row " + std::to_string(r) +
                                  " has " + std::to_string(t.cells[r].size()) +
                                  " cells, expected " + std::to_string(cols));
      }
    }
  }
  t.row_labels = read_labels("row_labels", t.num_rows());
  t.col_labels = read_labels("col_labels", t.num_cols());
  if (j.contains("sum_less_100") && !j["sum_less_100"].is_null()) {
    t.sum_less_100 = j["sum_less_100"].get<int>();
  }
  if (j.contains("comp_table")) t.comp_table = j["comp_table"].get<bool>();
  ValidateTable(t);
  return t;
}

nlohmann::ordered_json TableToJson(const Table& table) {
  nlohmann::ordered_json j;
  j["pii"] = table.pii;
  j["table_index"] = table.table_index;
  j["caption"] = table.caption;
  j["cells"] = table.cells;
  j["row_labels"] = table.row_labels;
  j["col_labels"] = table.col_labels;
  if (table.sum_less_100) j["sum_less_100"] = *table.sum_less_100;
  if (table.comp_table) j["comp_table"] = true;
  return j;
}

std::vector<Table> ParseTableDocument(std::string_view bytes) {
  std::vector<Table> tables;
  size_t offset = 0;
  while (offset < bytes.size()) {
    size_t end = bytes.find('\n', offset);
    if (end == std::string_view::npos) end = bytes.size();
    std::string_view line = bytes.substr(offset, end - offset);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    bool blank = true;
    for (char c : line) {
      if (c != ' ' && c != '\t') {
        blank = false;
        break;
      }
    }
    if (!blank) {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw DocumentParseError(std::string("malformed record: ") + e.what(),
                                 offset + (e.byte > 0 ? e.byte - 1 : 0));
      }
      try {
        tables.push_back(TableFromJson(j));
      } catch (const RectangularityError&) {
        throw;
      } catch (const TableError& e) {
        throw DocumentParseError(e.what(), offset);
      } catch (const nlohmann::json::exception& e) {
        throw DocumentParseError(e.what(), offset);
      }
    }
    offset = end + 1;
  }
  return tables;
}

std::vector<Table> ReadTableDocument(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TableError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseTableDocument(ss.str());
}

std::string SerializeTableDocument(const std::vector<Table>& tables) {
  std::string out;
  for (const Table& t : tables) {
    out += TableToJson(t).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

void WriteTableDocument(const std::string& path, const std::vector<Table>& tables) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TableError("cannot write " + path);
  out << SerializeTableDocument(tables);
}

std::string SanitizeMaterialId(std::string_view material_id) {
  std::string out(material_id);
  for (char& c : out) {
    if (c == '_') c = '-';
  }
  return out;
}

std::string EntityId::ToString() const {
  std::string out = pii + "_" + std::to_string(table_index) + "_" + std::to_string(row) +
                    "_" + std::to_string(col) + "_";
  if (kind == EntityKind::kComposition) out += "0_";
  out += SanitizeMaterialId(material_id);
  return out;
}

EntityId MakeEntityId(std::string_view pii, int table_index, int row, int col,
                      std::string_view material_id, EntityKind kind, const Table* table) {
  if (row < 0 || col < 0) throw BoundsError("negative cell index");
  if (table != nullptr && (static_cast<size_t>(row) >= table->num_rows() ||
                           static_cast<size_t>(col) >= table->num_cols())) {
    throw BoundsError("cell (" + std::to_string(row) + ", " + std::to_string(col) +
                      ") outside table " + table->id());
  }
  EntityId id;
  id.pii = std::string(pii);
  id.table_index = table_index;
  id.row = row;
  id.col = col;
  id.material_id = SanitizeMaterialId(material_id);
  id.kind = kind;
  return id;
}

}  // namespace tabkb
