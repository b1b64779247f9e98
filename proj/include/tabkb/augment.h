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

#ifndef TABKB_AUGMENT_H_
#define TABKB_AUGMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "tabkb/config.h"
#include "tabkb/table.h"

namespace tabkb {

class AugmentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Returned in place of a vector when no numeric value is available.
inline constexpr int kAugmentFailureSentinel = -50;

// ceil(a * n^alpha); 0 for n = 0.
int64_t TargetFrequency(int64_t n_original, double a, double alpha);

struct PlanEntry {
  int64_t n_original = 0;
  int64_t n_new = 0;
  std::vector<int> friends;
};

struct AugmentationPlan {
  double a = 10.0;
  double alpha = 0.65;
  std::map<int, PlanEntry> properties;  // keyed by label code 4..21
};

// Line counts per property over row and column labels.
std::map<int, int64_t> PropertyFrequencies(const std::vector<Table>& dataset);

AugmentationPlan GeneratePlan(const std::vector<Table>& dataset, const Config& cfg);
AugmentationPlan GeneratePlan(const std::vector<Table>& dataset, double a, double alpha,
                              const std::map<int, std::vector<int>>& friends);

nlohmann::ordered_json PlanToJson(const AugmentationPlan& plan);

struct AlignedVector {
  std::optional<std::vector<std::string>> cells;  // nullopt on failure
  int sentinel = 0;                               // kAugmentFailureSentinel on failure

  bool ok() const { return cells.has_value(); }
};

// Length alignment of a source line (heading cell first): identity,
// truncation, or padding with Gaussian samples of the source values.
// Samples outside mu +/- 3 sigma are redrawn up to 8 times, then clamped.
// sigma = 0 is replaced by 0.05. Throws AugmentationError when L < 1.
AlignedVector RowOrColAugmentor(const std::vector<std::string>& source, size_t target_length,
                                std::mt19937_64& rng);

// Axis that carries property labels; columns on a tie.
Axis PropertyAxis(const Table& table);
bool IsPropertyTable(const Table& table);

struct AugmentStats {
  int64_t inserted = 0;
  int64_t failed = 0;  // augmentor failures
  bool no_destination = false;
  bool no_source = false;
};

struct AugmentResult {
  std::vector<Table> tables;
  // Per table, per axis: true for synthesized lines.
  std::vector<std::vector<bool>> augmented_rows;
  std::vector<std::vector<bool>> augmented_cols;
  std::map<int, AugmentStats> stats;
  int warnings = 0;
};

// Inserts synthesized property lines into friend-bearing destination tables
// until each deficient property reaches its planned frequency. Properties
// are processed in code order, each with its own seeded stream.
AugmentResult Augment(const std::vector<Table>& dataset, const AugmentationPlan& plan,
                      uint64_t seed);

}  // namespace tabkb

#endif  // TABKB_AUGMENT_H_
