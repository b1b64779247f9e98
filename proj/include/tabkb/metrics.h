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

#ifndef TABKB_METRICS_H_
#define TABKB_METRICS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "tabkb/postprocess.h"

namespace tabkb {

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int64_t correct = 0;
  int64_t predicted = 0;
  int64_t gold = 0;
  // Set when a denominator was zero and the ratio was reported as 0.
  bool undefined = false;
};

// Prf from raw counts; zero denominators give 0 and set `undefined`.
Prf MakePrf(int64_t correct, int64_t predicted, int64_t gold);

// Value rendered to 6 significant digits, the comparison key for values.
std::string ValueKey(double v);

// A prediction is correct when entity, property, value and unit all match
// a distinct gold tuple.
Prf StrictPrf(const std::vector<ExtractedTuple>& predicted,
              const std::vector<ExtractedTuple>& gold);

// Per property code, plus the overall figure under key 0.
std::map<int, Prf> StrictPrfByProperty(const std::vector<ExtractedTuple>& predicted,
                                       const std::vector<ExtractedTuple>& gold);

struct UnitAccuracy {
  int64_t matched = 0;  // predictions matching gold on entity, property and value
  int64_t correct = 0;  // of those, with the gold unit
  std::optional<double> accuracy;
};

UnitAccuracy ComputeUnitAccuracy(const std::vector<ExtractedTuple>& predicted,
                                 const std::vector<ExtractedTuple>& gold);

nlohmann::ordered_json EvalReport(const std::vector<ExtractedTuple>& predicted,
                                  const std::vector<ExtractedTuple>& gold);

}  // namespace tabkb

#endif  // TABKB_METRICS_H_
