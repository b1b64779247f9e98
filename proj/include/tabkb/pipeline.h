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

#ifndef TABKB_PIPELINE_H_
#define TABKB_PIPELINE_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "nlohmann/json.hpp"
#include "tabkb/composition.h"
#include "tabkb/config.h"
#include "tabkb/gat.h"
#include "tabkb/kb.h"
#include "tabkb/postprocess.h"
#include "tabkb/table.h"

namespace tabkb {

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view bytes);

std::string ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path, std::string_view bytes);

struct RunManifest {
  std::string command;
  uint64_t seed = 0;
  std::string config_sha256;
  std::vector<std::pair<std::string, std::string>> inputs;   // path, digest
  std::vector<std::pair<std::string, std::string>> outputs;  // path, digest

  nlohmann::ordered_json ToJson() const;
};

// Writes `output`.manifest.json.
void WriteManifest(const std::string& output, const RunManifest& manifest);

// fn(i) for i in [0, n) on up to `workers` threads; results in index order.
// The first exception (lowest index) is rethrown after all work stops.
template <typename F>
auto ParallelMap(size_t n, int workers, F fn) -> std::vector<std::invoke_result_t<F, size_t>> {
  using R = std::invoke_result_t<F, size_t>;
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const size_t threads = std::min<size_t>(std::max(1, workers), std::max<size_t>(n, 1));
  std::vector<std::thread> pool;
  for (size_t t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// Line-delimited extraction file: one record per table.
nlohmann::ordered_json ExtractionToJson(const TableExtraction& t);
TableExtraction ExtractionFromJson(const nlohmann::json& j);
std::string SerializeExtractions(const std::vector<TableExtraction>& tables);
std::vector<TableExtraction> ParseExtractions(std::string_view bytes);

// Property tuples from a tuple file, an extraction file or a KB file.
std::vector<ExtractedTuple> LoadPropertyTuples(std::string_view bytes);

struct ClassifierSpec {
  const GatModel* model = nullptr;  // rules when null
  int embed_dim = 64;
  int positional_dim = 8;
  double alpha_threshold = 0.7;
};

ClassifierSpec RulesClassifier();
ClassifierSpec ModelClassifier(const GatModel& model, const Config& cfg);

// Header labels from the rules engine or the model, then composition
// relabeling. The table's own labels are ignored.
Table ClassifyTable(const Table& table, const Config& cfg, const ClassifierSpec& spec);

struct TableOutcome {
  Table labeled;
  TableExtraction extraction;
  std::vector<RuleFiring> audit;
  std::string error;  // set when the table could not be processed
};

// Extraction of one table whose labels are final.
TableOutcome ExtractLabeled(const Table& labeled, const Config& cfg);

// Classify and extract; per-table failures are reported in the outcome.
std::vector<TableOutcome> ExtractTables(const std::vector<Table>& tables, const Config& cfg,
                                        const ClassifierSpec& spec, int workers);

std::vector<TrainExample> MakeTrainingSet(const std::vector<Table>& tables, const Config& cfg,
                                          int workers);
TrainConfig TrainConfigFor(const Config& cfg, uint64_t seed);
GatDims DimsFor(const Config& cfg, const TrainConfig& train);

}  // namespace tabkb

#endif  // TABKB_PIPELINE_H_
