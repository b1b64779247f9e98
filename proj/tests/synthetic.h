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

// Seeded generators shared by the unit tests and the acceptance runner.

#ifndef TABKB_TESTS_SYNTHETIC_H_
#define TABKB_TESTS_SYNTHETIC_H_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tabkb/distant_supervision.h"
#include "tabkb/labels.h"
#include "tabkb/table.h"

namespace tabkb::testing {

struct PlantedTable {
  Table table;
  std::vector<ReferenceRecord> records;
  std::map<int, Transform> planted;
  Axis orientation = Axis::kCol;
  std::vector<int> expected_labels;  // along `orientation`
  int noise_line = -1;
};

inline std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// A property table whose reference values carry planted unit distortions:
// temperatures shifted by 273 and densities scaled by 1000. One extra line
// has a single value that matches the database, so its density stays below
// 0.30. Odd tables are transposed.
inline PlantedTable MakePlantedTable(std::mt19937_64& rng, int k) {
  PlantedTable out;
  const int n = 4 + static_cast<int>(rng() % 7);
  const std::vector<int> pool = {static_cast<int>(Label::kGlassTransitionTemperature),
                                 static_cast<int>(Label::kLiquidusTemperature),
                                 static_cast<int>(Label::kDensity),
                                 static_cast<int>(Label::kYoungsModulus),
                                 static_cast<int>(Label::kAbbeValue)};
  std::vector<int> props = pool;
  std::shuffle(props.begin(), props.end(), rng);
  props.resize(1 + rng() % 3);
  std::sort(props.begin(), props.end());

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int p : props) {
    const auto options = TransformsFor(p);
    out.planted[p] = options[rng() % options.size()];
  }

  std::vector<std::vector<std::string>> columns;
  std::vector<int> labels;
  std::vector<std::string> gid = {"Sample"};
  for (int i = 0; i < n; ++i) gid.push_back("S" + std::to_string(k) + "-" + std::to_string(i));
  columns.push_back(gid);
  labels.push_back(0);
  out.records.resize(n);
  for (int i = 0; i < n; ++i) out.records[i].id = "T" + std::to_string(k) + "-" + std::to_string(i);

  for (int p : props) {
    std::vector<std::string> col = {std::string(LabelDisplayName(p))};
    const Transform t = out.planted[p];
    for (int i = 0; i < n; ++i) {
      double observed;
      std::string ref_unit;
      if (p == static_cast<int>(Label::kDensity)) {
        observed = 2.0 + 4.0 * unit(rng);
        observed = std::round(observed * 1000.0) / 1000.0;
        if (t == Transform::kTimes1000) {
          ref_unit = "kg/m3";
        } else if (t == Transform::kDiv1000) {
          observed = std::round(observed * 1000.0);
          ref_unit = "g/cm3";
        } else {
          ref_unit = "g/cm3";
        }
      } else if (p == static_cast<int>(Label::kYoungsModulus)) {
        observed = std::round((40.0 + 100.0 * unit(rng)) * 100.0) / 100.0;
        ref_unit = "GPa";
      } else if (p == static_cast<int>(Label::kAbbeValue)) {
        observed = std::round((20.0 + 60.0 * unit(rng)) * 100.0) / 100.0;
      } else {
        const double base = p == static_cast<int>(Label::kLiquidusTemperature) ? 1100.0 : 500.0;
        observed = std::round((base + 400.0 * unit(rng)) * 10.0) / 10.0;
        ref_unit = t == Transform::kMinus273 ? "degC" : "K";
        if (t == Transform::kMinus273) observed += 273.0;
      }
      col.push_back(Fixed(observed, 3));
      out.records[i].properties[p] = {ApplyTransform(t, observed), ref_unit};
    }
    columns.push_back(col);
    labels.push_back(p);
  }

  // Noise line: far outside every property range except one copied value.
  std::vector<std::string> noise = {"Batch"};
  for (int i = 0; i < n; ++i) noise.push_back(Fixed(1e5 + 9e5 * unit(rng), 2));
  noise[1 + rng() % n] = columns[1][1 + rng() % n];
  out.noise_line = static_cast<int>(columns.size());
  columns.push_back(noise);
  labels.push_back(0);

  out.table.pii = "SYN" + std::to_string(k);
  out.table.table_index = 0;
  out.table.caption = "Synthetic table " + std::to_string(k);
  const size_t nc = columns.size();
  const size_t nr = columns[0].size();
  out.orientation = k % 2 == 0 ? Axis::kCol : Axis::kRow;
  if (out.orientation == Axis::kCol) {
    out.table.cells.assign(nr, std::vector<std::string>(nc));
    for (size_t r = 0; r < nr; ++r) {
      for (size_t c = 0; c < nc; ++c) out.table.cells[r][c] = columns[c][r];
    }
  } else {
    out.table.cells = columns;
  }
  out.table.row_labels.assign(out.table.num_rows(), 0);
  out.table.col_labels.assign(out.table.num_cols(), 0);
  out.expected_labels = labels;
  return out;
}

}  // namespace tabkb::testing

#endif  // TABKB_TESTS_SYNTHETIC_H_
