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

#ifndef TABKB_TESTS_GAT_FIXTURE_H_
#define TABKB_TESTS_GAT_FIXTURE_H_

#include <algorithm>
#include <cmath>

#include "tabkb/gat.h"

namespace tabkb::testing {

inline Table Fixture3x3() {
  Table t;
  t.pii = "FIX";
  t.table_index = 0;
  t.caption = "Thermal and physical properties of the glasses";
  t.cells = {{"Glass", "Tg (K)", "Density (g/cm3)"},
             {"G1", "700", "2.51"},
             {"G2", "712", "2.60"}};
  t.row_labels = {0, 0, 0};
  t.col_labels = {3, 7, 13};
  return t;
}

// Seeded default-size model whose classifier bias puts real mass on the
// material-id and property classes, so every constraint family is live.
inline GatModel FixtureModel(int in_dim, uint64_t seed = 11) {
  GatDims dims;
  dims.in_dim = in_dim;
  GatModel m = InitModel(dims, seed);
  m.bc(0, 0) = -1.0;
  m.bc(0, 1) = -1.0;
  m.bc(0, 2) = -1.0;
  m.bc(0, 3) = 2.2;
  for (int c = 4; c <= 21; ++c) m.bc(0, c) = 0.1;
  return m;
}

// Smallest distance of any pre-ReLU constraint term (and of p_gid from the
// 0.25 membership cut) to its kink. Finite differences are only valid when
// this is well above the step.
inline double ConstraintKinkMargin(const Matrix& probs, int rows, int cols) {
  const int H = rows + cols;
  auto g = [&](int h) { return probs(h, 3); };
  auto p = [&](int h) { return probs.row(h).segment(4, 18).sum(); };
  double margin = 1e300;
  for (int i = 0; i < rows; ++i) {
    for (int j = rows; j < H; ++j) {
      margin = std::min(margin, std::abs(g(i) + p(j) - 1));
      margin = std::min(margin, std::abs(p(i) + g(j) - 1));
      margin = std::min(margin, std::abs(p(i) + p(j) - 1));
    }
  }
  for (int i = 0; i < H; ++i) {
    for (int j = i + 1; j < H; ++j) margin = std::min(margin, std::abs(g(i) + g(j) - 1));
    margin = std::min(margin, std::abs(g(i) - 0.25));
  }
  return margin;
}

}  // namespace tabkb::testing

#endif  // TABKB_TESTS_GAT_FIXTURE_H_
