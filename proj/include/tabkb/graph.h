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

#ifndef TABKB_GRAPH_H_
#define TABKB_GRAPH_H_

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tabkb/table.h"

namespace tabkb {

enum class NodeKind { kCell, kRowHeader, kColHeader, kCaption };
enum class EdgeKind { kCellCell, kCellHeader, kCaptionHeader };

struct GraphNode {
  NodeKind kind = NodeKind::kCell;
  int row = -1;  // cells and row headers
  int col = -1;  // cells and column headers
};

struct GraphEdge {
  int src = 0;
  int dst = 0;
  EdgeKind kind = EdgeKind::kCellCell;
  bool operator==(const GraphEdge&) const = default;
};

// Node order: cells (row-major), row headers, column headers, caption.
struct TableGraph {
  int rows = 0;
  int cols = 0;
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  Eigen::MatrixXd features;  // num_nodes x (d + positional_dim)

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int cell_node(int r, int c) const { return r * cols + c; }
  int row_header_node(int r) const { return rows * cols + r; }
  int col_header_node(int c) const { return rows * cols + rows + c; }
  int caption_node() const { return rows * cols + rows + cols; }
  int num_headers() const { return rows + cols; }
  // Header slot h (0..rows+cols-1): row headers first, then columns.
  int header_node(int h) const { return rows * cols + h; }
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual int dimension() const = 0;
  virtual Eigen::VectorXd Embed(std::string_view text) const = 0;
};

// Signed feature hashing of character 3-grams (FNV-1a), L2-normalized.
// The empty string maps to the zero vector.
Eigen::VectorXd HashEmbed(std::string_view text, int d);

// HashEmbed over case- and compatibility-folded text.
class HashEmbedding : public EmbeddingProvider {
 public:
  explicit HashEmbedding(int d) : d_(d) {}
  int dimension() const override { return d_; }
  Eigen::VectorXd Embed(std::string_view text) const override;

 private:
  int d_;
};

enum class Zone {
  kFirstRow = 0,
  kLastRow,
  kFirstCol,
  kLastCol,
  kInterior,
  kHeader,
  kCaption,
  kOther,
};

TableGraph BuildGraph(const Table& table, const EmbeddingProvider& provider, int positional_dim);

// Counter-based generator used for header-node initialization.
uint64_t SplitMix64(uint64_t x);

}  // namespace tabkb

#endif  // TABKB_GRAPH_H_
