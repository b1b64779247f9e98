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

#include "tabkb/graph.h"

#include <cmath>

#include "tabkb/text.h"

namespace tabkb {
namespace {

constexpr uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr uint64_t kFnvPrime = 1099511628211ULL;

uint64_t Fnv1a(std::string_view s, uint64_t h = kFnvOffset) {
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= kFnvPrime;
  }
  return h;
}

Zone CellZone(int r, int c, int rows, int cols) {
  if (r == 0) return Zone::kFirstRow;
  if (c == 0) return Zone::kFirstCol;
  if (r == rows - 1) return Zone::kLastRow;
  if (c == cols - 1) return Zone::kLastCol;
  return Zone::kInterior;
}

// Uniform in [-1, 1) per coordinate, then scaled to unit norm.
Eigen::VectorXd HeaderInit(const std::string& pii, int table_index, int axis, int index, int d) {
  uint64_t key = Fnv1a(pii);
  key = SplitMix64(key ^ static_cast<uint64_t>(table_index));
  key = SplitMix64(key ^ (static_cast<uint64_t>(axis) << 32 | static_cast<uint32_t>(index)));
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) {
    const uint64_t bits = SplitMix64(key + static_cast<uint64_t>(i));
    v[i] = static_cast<double>(bits >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  }
  const double n = v.norm();
  if (n > 0) v /= n;
  return v;
}

}  // namespace

uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Eigen::VectorXd HashEmbed(std::string_view text, int d) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
  if (text.empty()) return v;
  std::string padded;
  padded.reserve(text.size() + 2);
  padded.push_back('\x02');
  padded.append(text);
  padded.push_back('\x03');
  for (size_t i = 0; i + 3 <= padded.size(); ++i) {
    const uint64_t h = Fnv1a(std::string_view(padded).substr(i, 3));
    const int bucket = static_cast<int>(h % static_cast<uint64_t>(d));
    v[bucket] += (h >> 63) ? -1.0 : 1.0;
  }
  const double n = v.norm();
  // Signed buckets can cancel exactly; fall back to the unsigned count.
  if (n == 0.0) {
    for (size_t i = 0; i + 3 <= padded.size(); ++i) {
      v[static_cast<int>(Fnv1a(std::string_view(padded).substr(i, 3)) % static_cast<uint64_t>(d))] += 1.0;
    }
    return v / v.norm();
  }
  return v / n;
}

Eigen::VectorXd HashEmbedding::Embed(std::string_view text) const {
  return HashEmbed(NormalizeForMatch(text), d_);
}

TableGraph BuildGraph(const Table& table, const EmbeddingProvider& provider, int positional_dim) {
  ValidateTable(table);
  TableGraph g;
  g.rows = static_cast<int>(table.num_rows());
  g.cols = static_cast<int>(table.num_cols());
  const int R = g.rows, C = g.cols;
  const int d = provider.dimension();
  const int n = R * C + R + C + 1;
  g.nodes.resize(n);
  g.features = Eigen::MatrixXd::Zero(n, d + positional_dim);
  auto set_zone = [&](int node, Zone z) {
    const int idx = static_cast<int>(z);
    if (idx < positional_dim) g.features(node, d + idx) = 1.0;
  };

  for (int r = 0; r < R; ++r) {
    for (int c = 0; c < C; ++c) {
      const int v = g.cell_node(r, c);
      g.nodes[v] = GraphNode{NodeKind::kCell, r, c};
      g.features.row(v).head(d) = provider.Embed(table.cells[r][c]).transpose();
      set_zone(v, CellZone(r, c, R, C));
    }
  }
  for (int r = 0; r < R; ++r) {
    const int v = g.row_header_node(r);
    g.nodes[v] = GraphNode{NodeKind::kRowHeader, r, -1};
    g.features.row(v).head(d) = HeaderInit(table.pii, table.table_index, 0, r, d).transpose();
    set_zone(v, Zone::kHeader);
  }
  for (int c = 0; c < C; ++c) {
    const int v = g.col_header_node(c);
    g.nodes[v] = GraphNode{NodeKind::kColHeader, -1, c};
    g.features.row(v).head(d) = HeaderInit(table.pii, table.table_index, 1, c, d).transpose();
    set_zone(v, Zone::kHeader);
  }
  const int cap = g.caption_node();
  g.nodes[cap] = GraphNode{NodeKind::kCaption, -1, -1};
  g.features.row(cap).head(d) = provider.Embed(table.caption).transpose();
  set_zone(cap, Zone::kCaption);

  g.edges.reserve(static_cast<size_t>(R) * C * (R + C) + R + C);
  for (int r = 0; r < R; ++r) {
    for (int c = 0; c < C; ++c) {
      const int u = g.cell_node(r, c);
      for (int c2 = 0; c2 < C; ++c2) {
        if (c2 != c) g.edges.push_back({u, g.cell_node(r, c2), EdgeKind::kCellCell});
      }
      for (int r2 = 0; r2 < R; ++r2) {
        if (r2 != r) g.edges.push_back({u, g.cell_node(r2, c), EdgeKind::kCellCell});
      }
      g.edges.push_back({u, g.row_header_node(r), EdgeKind::kCellHeader});
      g.edges.push_back({u, g.col_header_node(c), EdgeKind::kCellHeader});
    }
  }
  for (int h = 0; h < R + C; ++h) {
    g.edges.push_back({cap, g.header_node(h), EdgeKind::kCaptionHeader});
  }
  return g;
}

}  // namespace tabkb
