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

#include "tabkb/metrics.h"

#include <algorithm>
#include <cstdio>
#include <tuple>

#include "tabkb/labels.h"

namespace tabkb {
namespace {

using Key = std::tuple<std::string, int, std::string>;  // entity, property, value

Key MatchKey(const ExtractedTuple& t) {
  return {t.entity.ToString(), t.property, ValueKey(t.value)};
}

int64_t CountStrict(const std::vector<ExtractedTuple>& predicted,
                    const std::vector<ExtractedTuple>& gold) {
  std::map<std::pair<Key, std::string>, int64_t> pool;
  for (const auto& g : gold) ++pool[{MatchKey(g), g.unit}];
  int64_t correct = 0;
  for (const auto& p : predicted) {
    auto it = pool.find({MatchKey(p), p.unit});
    if (it != pool.end() && it->second > 0) {
      --it->second;
      ++correct;
    }
  }
  return correct;
}

nlohmann::ordered_json PrfJson(const Prf& p) {
  nlohmann::ordered_json j;
  j["precision"] = p.precision;
  j["recall"] = p.recall;
  j["f1"] = p.f1;
  j["correct"] = p.correct;
  j["predicted"] = p.predicted;
  j["gold"] = p.gold;
  if (p.undefined) j["undefined"] = true;
  return j;
}

}  // namespace

Prf MakePrf(int64_t correct, int64_t predicted, int64_t gold) {
  Prf r;
  r.correct = correct;
  r.predicted = predicted;
  r.gold = gold;
  if (predicted > 0) {
    r.precision = static_cast<double>(correct) / static_cast<double>(predicted);
  } else {
    r.undefined = true;
  }
  if (gold > 0) {
    r.recall = static_cast<double>(correct) / static_cast<double>(gold);
  } else {
    r.undefined = true;
  }
  if (r.precision + r.recall > 0) {
    r.f1 = 2 * r.precision * r.recall / (r.precision + r.recall);
  }
  return r;
}

std::string ValueKey(double v) {
  if (v == 0) v = 0;  // fold -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.5e", v);
  return buf;
}

Prf StrictPrf(const std::vector<ExtractedTuple>& predicted,
              const std::vector<ExtractedTuple>& gold) {
  return MakePrf(CountStrict(predicted, gold), static_cast<int64_t>(predicted.size()),
                 static_cast<int64_t>(gold.size()));
}

std::map<int, Prf> StrictPrfByProperty(const std::vector<ExtractedTuple>& predicted,
                                       const std::vector<ExtractedTuple>& gold) {
  std::map<int, std::vector<ExtractedTuple>> p_by, g_by;
  for (const auto& t : predicted) p_by[t.property].push_back(t);
  for (const auto& t : gold) g_by[t.property].push_back(t);
  std::map<int, Prf> out;
  for (int p = kFirstProperty; p <= kLastProperty; ++p) {
    if (!p_by.count(p) && !g_by.count(p)) continue;
    out[p] = StrictPrf(p_by[p], g_by[p]);
  }
  out[0] = StrictPrf(predicted, gold);
  return out;
}

UnitAccuracy ComputeUnitAccuracy(const std::vector<ExtractedTuple>& predicted,
                                 const std::vector<ExtractedTuple>& gold) {
  std::map<Key, std::map<std::string, int64_t>> pool;
  for (const auto& g : gold) ++pool[MatchKey(g)][g.unit];
  UnitAccuracy out;
  for (const auto& p : predicted) {
    auto it = pool.find(MatchKey(p));
    if (it == pool.end()) continue;
    auto& units = it->second;
    // Prefer the gold tuple with the same unit, then any remaining one.
    auto u = units.find(p.unit);
    const bool same = u != units.end() && u->second > 0;
    if (!same) {
      u = std::find_if(units.begin(), units.end(), [](const auto& e) { return e.second > 0; });
      if (u == units.end()) continue;
    }
    --u->second;
    ++out.matched;
    out.correct += same;
  }
  if (out.matched > 0) {
    out.accuracy = static_cast<double>(out.correct) / static_cast<double>(out.matched);
  }
  return out;
}

nlohmann::ordered_json EvalReport(const std::vector<ExtractedTuple>& predicted,
                                  const std::vector<ExtractedTuple>& gold) {
  const auto by = StrictPrfByProperty(predicted, gold);
  nlohmann::ordered_json j;
  j["overall"] = PrfJson(by.at(0));
  const auto ua = ComputeUnitAccuracy(predicted, gold);
  nlohmann::ordered_json u;
  u["matched"] = ua.matched;
  u["correct"] = ua.correct;
  u["accuracy"] = ua.accuracy ? nlohmann::ordered_json(*ua.accuracy) : nlohmann::ordered_json();
  j["unit_accuracy"] = u;
  nlohmann::ordered_json props = nlohmann::ordered_json::array();
  for (const auto& [p, prf] : by) {
    if (p == 0) continue;
    auto row = PrfJson(prf);
    row["property"] = LabelKey(p);
    props.push_back(row);
  }
  j["properties"] = props;
  return j;
}

}  // namespace tabkb
