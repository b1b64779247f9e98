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

#ifndef TABKB_TESTS_TEST_UTIL_H_
#define TABKB_TESTS_TEST_UTIL_H_

#include <random>
#include <string>
#include <vector>

#include "tabkb/table.h"

namespace tabkb::testing {

// Random rectangular table with short alphanumeric cells.
inline Table RandomTable(std::mt19937_64& rng, int rows, int cols, const std::string& pii = "T") {
  static const char* kWords[] = {"Glass", "Tg (K)", "SiO2", "2.51", "700", "G1", "n",
                                 "E (GPa)", "", "Density", "0.22", "B2O3", "x", "1.52"};
  std::uniform_int_distribution<int> pick(0, 13);
  Table t;
  t.pii = pii;
  t.table_index = static_cast<int>(rng() % 5);
  t.caption = "Caption " + std::to_string(rng() % 100);
  t.cells.assign(rows, std::vector<std::string>(cols));
  for (auto& row : t.cells) {
    for (auto& cell : row) cell = kWords[pick(rng)];
  }
  t.row_labels.assign(rows, 0);
  t.col_labels.assign(cols, 0);
  return t;
}

}  // namespace tabkb::testing

#endif  // TABKB_TESTS_TEST_UTIL_H_
