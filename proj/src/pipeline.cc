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

#include "tabkb/pipeline.h"

#include <openssl/evp.h>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tabkb/annotate.h"
#include "tabkb/graph.h"
#include "tabkb/text.h"

namespace tabkb {

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileBytes(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for " + path);
}

nlohmann::ordered_json RunManifest::ToJson() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["seed"] = seed;
  j["config_sha256"] = config_sha256;
  auto files = [](const auto& list) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& [path, digest] : list) a.push_back({{"path", path}, {"sha256", digest}});
    return a;
  };
  j["inputs"] = files(inputs);
  j["outputs"] = files(outputs);
  return j;
}

void WriteManifest(const std::string& output, const RunManifest& manifest) {
  WriteFileBytes(output + ".manifest.json", manifest.ToJson().dump(2) + "\n");
}

nlohmann::ordered_json ExtractionToJson(const TableExtraction& t) {
  nlohmann::ordered_json j;
  j["pii"] = t.pii;
  j["table_index"] = t.table_index;
  j["orientation"] = AxisName(t.orientation);
  nlohmann::ordered_json cs = nlohmann::ordered_json::array();
  for (const auto& c : t.compositions) cs.push_back(CompositionTupleToJson(c));
  j["compositions"] = cs;
  nlohmann::ordered_json ps = nlohmann::ordered_json::array();
  for (const auto& p : t.properties) ps.push_back(TupleToJson(p));
  j["properties"] = ps;
  return j;
}

TableExtraction ExtractionFromJson(const nlohmann::json& j) {
  TableExtraction t;
  t.pii = j.at("pii").get<std::string>();
  t.table_index = j.at("table_index").get<int>();
  const std::string o = j.at("orientation").get<std::string>();
  if (o != "row" && o != "col") throw TableError("unknown orientation " + o);
  t.orientation = o == "row" ? Axis::kRow : Axis::kCol;
  for (const auto& c : j.at("compositions")) t.compositions.push_back(CompositionTupleFromJson(c));
  for (const auto& p : j.at("properties")) t.properties.push_back(TupleFromJson(p));
  return t;
}

std::string SerializeExtractions(const std::vector<TableExtraction>& tables) {
  std::string out;
  for (const auto& t : tables) out += ExtractionToJson(t).dump() + "\n";
  return out;
}

std::vector<TableExtraction> ParseExtractions(std::string_view bytes) {
  std::istringstream in{std::string(bytes)};
  std::string line;
  size_t line_no = 0;
  std::vector<TableExtraction> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      out.push_back(ExtractionFromJson(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw TableError("extraction line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<ExtractedTuple> LoadPropertyTuples(std::string_view bytes) {
  const size_t first = bytes.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const size_t end = bytes.find('\n', first);
  nlohmann::json head;
  try {
    head = nlohmann::json::parse(bytes.substr(first, end == std::string_view::npos
                                                         ? std::string_view::npos
                                                         : end - first));
  } catch (const std::exception& e) {
    throw TableError(std::string("line 1: ") + e.what());
  }
  std::vector<ExtractedTuple> out;
  if (head.is_object() && head.contains("schema")) {
    std::set<std::string> seen;
    for (const auto& r : ParseKb(bytes)) {
      for (const auto& p : r.properties) {
        if (seen.insert(p.entity.ToString() + "#" + std::to_string(p.property)).second) {
          out.push_back(p);
        }
      }
    }
  } else if (head.is_object() && head.contains("orientation")) {
    for (const auto& t : ParseExtractions(bytes)) {
      out.insert(out.end(), t.properties.begin(), t.properties.end());
    }
  } else {
    out = ParseTuples(bytes);
  }
  return out;
}

ClassifierSpec RulesClassifier() { return {}; }

ClassifierSpec ModelClassifier(const GatModel& model, const Config& cfg) {
  ClassifierSpec spec;
  spec.model = &model;
  spec.embed_dim = cfg.train.embed_dim;
  spec.positional_dim = cfg.train.positional_dim;
  spec.alpha_threshold = cfg.train.alpha_threshold;
  if (model.dims.in_dim != spec.embed_dim + spec.positional_dim) {
    throw ModelConfigError("model input width " + std::to_string(model.dims.in_dim) +
                           " does not match embed_dim + positional_dim = " +
                           std::to_string(spec.embed_dim + spec.positional_dim));
  }
  return spec;
}

Table ClassifyTable(const Table& table, const Config& cfg, const ClassifierSpec& spec) {
  Table t = table;
  t.row_labels.assign(t.num_rows(), 0);
  t.col_labels.assign(t.num_cols(), 0);
  t.comp_table = false;
  t.sum_less_100.reset();
  if (spec.model) {
    const TableGraph g = BuildGraph(t, HashEmbedding(spec.embed_dim), spec.positional_dim);
    const auto labels = PredictLabels(GatForward(*spec.model, g), spec.alpha_threshold);
    for (int r = 0; r < g.rows; ++r) t.row_labels[r] = labels[r];
    for (int c = 0; c < g.cols; ++c) t.col_labels[c] = labels[g.rows + c];
  } else {
    const AnnotationResult a = AnnotateTable(t, cfg);
    t.row_labels = a.row_labels;
    t.col_labels = a.col_labels;
  }
  const CompositionResult comp = RelabelCompositionTable(t, cfg);
  t.row_labels = comp.row_labels;
  t.col_labels = comp.col_labels;
  t.comp_table = comp.comp_table;
  t.sum_less_100 = comp.sum_less_100;
  return t;
}

TableOutcome ExtractLabeled(const Table& labeled, const Config& cfg) {
  TableOutcome out;
  out.labeled = labeled;
  const CompositionResult comp = RelabelCompositionTable(labeled, cfg);
  const PostprocessResult post =
      PostProcessTable(labeled, comp.row_labels, comp.col_labels, cfg);
  out.audit = post.audit;
  auto& x = out.extraction;
  x.pii = labeled.pii;
  x.table_index = labeled.table_index;
  x.orientation = comp.comp_table ? comp.orientation : post.orientation;
  x.compositions = ExtractCompositions(labeled, comp, cfg);
  x.properties = post.tuples;
  return out;
}

std::vector<TableOutcome> ExtractTables(const std::vector<Table>& tables, const Config& cfg,
                                        const ClassifierSpec& spec, int workers) {
  return ParallelMap(tables.size(), workers, [&](size_t i) {
    try {
      return ExtractLabeled(ClassifyTable(tables[i], cfg, spec), cfg);
    } catch (const std::exception& e) {
      TableOutcome bad;
      bad.labeled = tables[i];
      bad.extraction.pii = tables[i].pii;
      bad.extraction.table_index = tables[i].table_index;
      bad.error = tables[i].id() + ": " + e.what();
      return bad;
    }
  });
}

std::vector<TrainExample> MakeTrainingSet(const std::vector<Table>& tables, const Config& cfg,
                                          int workers) {
  const HashEmbedding provider(cfg.train.embed_dim);
  return ParallelMap(tables.size(), workers, [&](size_t i) {
    return MakeExample(tables[i], provider, cfg.train.positional_dim);
  });
}

TrainConfig TrainConfigFor(const Config& cfg, uint64_t seed) {
  TrainConfig t = TrainConfig::FromDefaults(cfg.train);
  t.seed = seed;
  return t;
}

GatDims DimsFor(const Config& cfg, const TrainConfig& train) {
  GatDims d;
  d.in_dim = cfg.train.embed_dim + cfg.train.positional_dim;
  d.hidden1 = train.hidden1;
  d.hidden2 = train.hidden2;
  d.heads = train.heads;
  d.self_loops = train.self_loops;
  return d;
}

}  // namespace tabkb
