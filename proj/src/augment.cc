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

#include "tabkb/augment.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>

#include "tabkb/labels.h"
#include "tabkb/numeric.h"

namespace tabkb {
namespace {

constexpr int kMaxRedraws = 8;
constexpr double kZeroSigmaNoise = 0.05;

std::string FormatSample(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

bool HasLabel(const Table& t, int code) {
  return std::find(t.row_labels.begin(), t.row_labels.end(), code) != t.row_labels.end() ||
         std::find(t.col_labels.begin(), t.col_labels.end(), code) != t.col_labels.end();
}

int CountProperties(const std::vector<int>& labels) {
  return static_cast<int>(std::count_if(labels.begin(), labels.end(), IsProperty));
}

std::mt19937_64 PropertyStream(uint64_t seed, int property) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(property)};
  return std::mt19937_64(seq);
}

}  // namespace

int64_t TargetFrequency(int64_t n_original, double a, double alpha) {
  if (n_original <= 0) return 0;
  const long double v = static_cast<long double>(a) *
                        std::pow(static_cast<long double>(n_original),
                                 static_cast<long double>(alpha));
  return static_cast<int64_t>(std::ceil(v));
}

std::map<int, int64_t> PropertyFrequencies(const std::vector<Table>& dataset) {
  std::map<int, int64_t> freq;
  for (int p = kFirstProperty; p <= kLastProperty; ++p) freq[p] = 0;
  for (const auto& t : dataset) {
    for (int c : t.row_labels) {
      if (IsProperty(c)) ++freq[c];
    }
    for (int c : t.col_labels) {
      if (IsProperty(c)) ++freq[c];
    }
  }
  return freq;
}

AugmentationPlan GeneratePlan(const std::vector<Table>& dataset, double a, double alpha,
                              const std::map<int, std::vector<int>>& friends) {
  AugmentationPlan plan;
  plan.a = a;
  plan.alpha = alpha;
  for (const auto& [p, n] : PropertyFrequencies(dataset)) {
    PlanEntry e;
    e.n_original = n;
    e.n_new = TargetFrequency(n, a, alpha);
    if (auto it = friends.find(p); it != friends.end()) e.friends = it->second;
    plan.properties[p] = std::move(e);
  }
  return plan;
}

AugmentationPlan GeneratePlan(const std::vector<Table>& dataset, const Config& cfg) {
  std::map<int, std::vector<int>> friends;
  for (int p = kFirstProperty; p <= kLastProperty; ++p) friends[p] = cfg.Rules(p).friends;
  return GeneratePlan(dataset, cfg.augment.a, cfg.augment.alpha, friends);
}

nlohmann::ordered_json PlanToJson(const AugmentationPlan& plan) {
  nlohmann::ordered_json j;
  j["a"] = plan.a;
  j["alpha"] = plan.alpha;
  nlohmann::ordered_json props = nlohmann::ordered_json::array();
  for (const auto& [p, e] : plan.properties) {
    nlohmann::ordered_json row;
    row["property"] = LabelKey(p);
    row["n_original"] = e.n_original;
    row["n_new"] = e.n_new;
    nlohmann::ordered_json f = nlohmann::ordered_json::array();
    for (int q : e.friends) f.push_back(LabelKey(q));
    row["friends"] = f;
    props.push_back(row);
  }
  j["properties"] = props;
  return j;
}

AlignedVector RowOrColAugmentor(const std::vector<std::string>& source, size_t target_length,
                                std::mt19937_64& rng) {
  if (target_length < 1) throw AugmentationError("target length must be at least 1");
  AlignedVector out;
  if (source.size() >= target_length) {
    out.cells = std::vector<std::string>(source.begin(), source.begin() + target_length);
    return out;
  }
  const size_t begin = std::max<size_t>(1, FirstNumericCell(source));
  const std::vector<double> values = LineValues(source, begin);
  if (values.empty()) {
    out.sentinel = kAugmentFailureSentinel;
    return out;
  }
  const double mu = Mean(values);
  double sigma = StdDev(values);
  if (!(sigma > 0)) sigma = kZeroSigmaNoise;
  std::normal_distribution<double> normal(mu, sigma);
  const double lo = mu - 3 * sigma;
  const double hi = mu + 3 * sigma;
  std::vector<std::string> cells = source;
  while (cells.size() < target_length) {
    double x = normal(rng);
    for (int k = 0; k < kMaxRedraws && (x < lo || x > hi); ++k) x = normal(rng);
    x = std::clamp(x, lo, hi);
    cells.push_back(FormatSample(x));
  }
  out.cells = std::move(cells);
  return out;
}

Axis PropertyAxis(const Table& table) {
  return CountProperties(table.row_labels) > CountProperties(table.col_labels) ? Axis::kRow
                                                                                : Axis::kCol;
}

bool IsPropertyTable(const Table& table) {
  return CountProperties(table.row_labels) + CountProperties(table.col_labels) > 0;
}

AugmentResult Augment(const std::vector<Table>& dataset, const AugmentationPlan& plan,
                      uint64_t seed) {
  AugmentResult res;
  res.tables = dataset;
  for (const auto& t : dataset) {
    res.augmented_rows.emplace_back(t.num_rows(), false);
    res.augmented_cols.emplace_back(t.num_cols(), false);
  }

  for (const auto& [p, entry] : plan.properties) {
    if (entry.n_new <= entry.n_original) continue;
    AugmentStats& stats = res.stats[p];
    const int64_t needed = entry.n_new - entry.n_original;

    // Sources come from the input tables only, never from synthesized lines.
    std::vector<std::vector<std::string>> sources;
    for (const auto& t : dataset) {
      for (Axis axis : {Axis::kRow, Axis::kCol}) {
        const auto& labels = t.Labels(axis);
        for (size_t i = 0; i < labels.size(); ++i) {
          if (labels[i] == p) sources.push_back(t.Line(axis, i));
        }
      }
    }
    std::vector<size_t> pool;
    for (size_t k = 0; k < res.tables.size(); ++k) {
      const Table& t = res.tables[k];
      if (!IsPropertyTable(t) || HasLabel(t, p)) continue;
      const bool has_friend = std::any_of(entry.friends.begin(), entry.friends.end(),
                                          [&](int f) { return HasLabel(t, f); });
      if (has_friend) pool.push_back(k);
    }
    if (sources.empty() || pool.empty()) {
      stats.no_source = sources.empty();
      stats.no_destination = pool.empty();
      ++res.warnings;
      std::cerr << "augment: skipping " << LabelKey(p) << ": "
                << (sources.empty() ? "no source lines" : "no eligible destination") << "\n";
      continue;
    }

    std::mt19937_64 rng = PropertyStream(seed, p);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    std::vector<size_t> dst(static_cast<size_t>(needed));
    for (auto& d : dst) d = pool[pick(rng)];

    for (int64_t s = 0; s < needed; ++s) {
      const auto& source = sources[static_cast<size_t>(s) % sources.size()];
      const size_t k = dst[static_cast<size_t>(s)];
      Table& t = res.tables[k];
      const Axis axis = PropertyAxis(t);
      const size_t length = axis == Axis::kCol ? t.num_rows() : t.num_cols();
      const AlignedVector v = RowOrColAugmentor(source, length, rng);
      if (!v.ok()) {
        ++stats.failed;
        std::cerr << "augment: " << LabelKey(p) << " into " << t.id() << " returned "
                  << v.sentinel << "\n";
        continue;
      }
      if (axis == Axis::kCol) {
        for (size_t r = 0; r < t.num_rows(); ++r) t.cells[r].push_back((*v.cells)[r]);
        t.col_labels.push_back(p);
        res.augmented_cols[k].push_back(true);
      } else {
        t.cells.push_back(*v.cells);
        t.row_labels.push_back(p);
        res.augmented_rows[k].push_back(true);
      }
      const size_t rows = t.cells.size();
      const size_t cols = t.cells.empty() ? 0 : t.cells.front().size();
      const bool rectangular = std::all_of(t.cells.begin(), t.cells.end(),
                                           [&](const auto& row) { return row.size() == cols; });
      if (!rectangular || rows != t.row_labels.size() || cols != t.col_labels.size() ||
          t.num_cells() != rows * cols) {
        throw AugmentationError("table " + t.id() + ": inconsistent shape after inserting " +
                                std::string(LabelKey(p)));
      }
      ++stats.inserted;
    }
  }
  return res;
}

}  // namespace tabkb
