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

// tabkb: command-line driver for the extraction pipeline.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tabkb/annotate.h"
#include "tabkb/augment.h"
#include "tabkb/config.h"
#include "tabkb/distant_supervision.h"
#include "tabkb/gat.h"
#include "tabkb/kb.h"
#include "tabkb/metrics.h"
#include "tabkb/pipeline.h"
#include "tabkb/table.h"

namespace tabkb {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

// Thrown for data problems that do not have a module error type.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config_path;
  std::optional<uint64_t> seed;
  int workers = 1;
  std::string audit_path;
};

struct Context {
  Config cfg;
  uint64_t seed = 0;
  RunManifest manifest;
};

Context Start(const std::string& command, const Common& common) {
  Context ctx;
  ctx.cfg = common.config_path.empty() ? DefaultConfig() : LoadConfig(common.config_path);
  ctx.seed = common.seed.value_or(ctx.cfg.train.seed);
  ctx.manifest.command = command;
  ctx.manifest.seed = ctx.seed;
  ctx.manifest.config_sha256 = Sha256Hex(ctx.cfg.source);
  return ctx;
}

std::string Input(Context& ctx, const std::string& path) {
  std::string bytes;
  try {
    bytes = ReadFileBytes(path);
  } catch (const std::exception& e) {
    throw DataError(e.what());
  }
  ctx.manifest.inputs.emplace_back(path, Sha256Hex(bytes));
  return bytes;
}

void Output(Context& ctx, const std::string& path, const std::string& bytes) {
  WriteFileBytes(path, bytes);
  ctx.manifest.outputs.emplace_back(path, Sha256Hex(bytes));
}

void Finish(Context& ctx, const std::string& primary) { WriteManifest(primary, ctx.manifest); }

std::vector<Table> ReadTables(Context& ctx, const std::string& path) {
  return ParseTableDocument(Input(ctx, path));
}

int RunIngest(const Common& common, const std::string& in, const std::string& out) {
  Context ctx = Start("ingest", common);
  const auto tables = ReadTables(ctx, in);
  Output(ctx, out, SerializeTableDocument(tables));
  Finish(ctx, out);
  std::cerr << "ingest: " << tables.size() << " tables\n";
  return kExitOk;
}

int RunSupervise(const Common& common, const std::string& in, const std::string& db_path,
                 const std::string& out) {
  Context ctx = Start("supervise", common);
  const auto tables = ReadTables(ctx, in);
  const ReferenceDatabase db = ParseReferenceDatabase(Input(ctx, db_path));
  const auto aligned = ParallelMap(tables.size(), common.workers, [&](size_t i) {
    return AlignTable(tables[i], db, ctx.cfg.distant);
  });
  std::vector<Table> labeled;
  for (size_t i = 0; i < tables.size(); ++i) {
    if (!aligned[i].retained) {
      std::cerr << "supervise: " << tables[i].id() << ": no axis reached the match density\n";
      continue;
    }
    Table t = tables[i];
    t.row_labels = aligned[i].row_labels;
    t.col_labels = aligned[i].col_labels;
    labeled.push_back(std::move(t));
  }
  Output(ctx, out, SerializeTableDocument(labeled));
  Finish(ctx, out);
  std::cerr << "supervise: " << labeled.size() << " of " << tables.size()
            << " tables retained\n";
  return kExitOk;
}

int RunAnnotate(const Common& common, const std::string& in, const std::string& out) {
  Context ctx = Start("annotate", common);
  const auto tables = ReadTables(ctx, in);
  const auto labeled = ParallelMap(tables.size(), common.workers, [&](size_t i) {
    return ClassifyTable(tables[i], ctx.cfg, RulesClassifier());
  });
  Output(ctx, out, SerializeTableDocument(labeled));
  Finish(ctx, out);
  return kExitOk;
}

int RunAugment(const Common& common, const std::string& in, const std::string& out,
               const std::string& plan_path) {
  Context ctx = Start("augment", common);
  const auto tables = ReadTables(ctx, in);
  const AugmentationPlan plan = GeneratePlan(tables, ctx.cfg);
  const AugmentResult result = Augment(tables, plan, ctx.seed);
  Output(ctx, out, SerializeTableDocument(result.tables));
  if (!plan_path.empty()) Output(ctx, plan_path, PlanToJson(plan).dump(2) + "\n");
  Finish(ctx, out);
  for (const auto& [p, s] : result.stats) {
    std::cerr << "augment: " << LabelKey(p) << " inserted " << s.inserted << ", failed "
              << s.failed << "\n";
  }
  return kExitOk;
}

int RunTrain(const Common& common, const std::string& in, const std::string& out,
             std::optional<int> epochs, bool self_loops) {
  Context ctx = Start("train", common);
  const auto tables = ReadTables(ctx, in);
  TrainConfig tc = TrainConfigFor(ctx.cfg, ctx.seed);
  if (epochs) tc.epochs = *epochs;
  tc.self_loops = self_loops;
  const auto data = MakeTrainingSet(tables, ctx.cfg, common.workers);
  GatModel model = InitModel(DimsFor(ctx.cfg, tc), ctx.seed);
  const TrainTrace trace = Train(model, data, tc);
  Output(ctx, out, ModelToJson(model));
  Finish(ctx, out);
  if (!trace.loss.empty()) std::cerr << "train: final loss " << trace.loss.back() << "\n";
  return kExitOk;
}

int RunExtract(const Common& common, const std::string& in, const std::string& out,
               const std::string& model_path, bool use_labels) {
  Context ctx = Start("extract", common);
  const auto tables = ReadTables(ctx, in);
  std::optional<GatModel> model;
  if (!model_path.empty()) model = ModelFromJson(Input(ctx, model_path));
  std::vector<TableOutcome> outcomes;
  if (use_labels) {
    outcomes = ParallelMap(tables.size(), common.workers,
                           [&](size_t i) { return ExtractLabeled(tables[i], ctx.cfg); });
  } else {
    const ClassifierSpec spec = model ? ModelClassifier(*model, ctx.cfg) : RulesClassifier();
    outcomes = ExtractTables(tables, ctx.cfg, spec, common.workers);
  }
  std::vector<TableExtraction> extractions;
  std::string audit;
  int failures = 0;
  for (const auto& o : outcomes) {
    if (!o.error.empty()) {
      std::cerr << "extract: " << o.error << "\n";
      ++failures;
      continue;
    }
    extractions.push_back(o.extraction);
    for (const auto& f : o.audit) audit += RuleFiringToJson(f).dump() + "\n";
  }
  Output(ctx, out, SerializeExtractions(extractions));
  if (!common.audit_path.empty()) Output(ctx, common.audit_path, audit);
  Finish(ctx, out);
  return failures ? kExitData : kExitOk;
}

int RunLink(const Common& common, const std::string& in, const std::string& out) {
  Context ctx = Start("link", common);
  const auto kb = BuildKnowledgeBase(ParseExtractions(Input(ctx, in)));
  Output(ctx, out, SerializeKb(kb));
  Output(ctx, out + ".idx", KbIndex(kb));
  Finish(ctx, out);
  return kExitOk;
}

int RunEval(const Common& common, const std::string& pred, const std::string& gold,
            const std::string& out) {
  Context ctx = Start("eval", common);
  const auto p = LoadPropertyTuples(Input(ctx, pred));
  const auto g = LoadPropertyTuples(Input(ctx, gold));
  const std::string report = EvalReport(p, g).dump(2) + "\n";
  if (out.empty()) {
    std::cout << report;
  } else {
    Output(ctx, out, report);
    Finish(ctx, out);
  }
  return kExitOk;
}

int RunScreen(const Common& common, const std::string& kb_path,
              const std::vector<std::string>& where, const std::string& out) {
  Context ctx = Start("screen", common);
  const auto kb = ParseKb(Input(ctx, kb_path));
  std::vector<Predicate> predicates;
  for (const auto& w : where) predicates.push_back(ParsePredicate(w, ctx.cfg));
  const std::string table = ScreenTable(Screen(kb, predicates), predicates);
  if (out.empty()) {
    std::cout << table;
  } else {
    Output(ctx, out, table);
    Finish(ctx, out);
  }
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"tabkb: materials knowledge base from scientific tables"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--config", common.config_path, "Config file (default: built-in)");
  app.add_option("--seed", common.seed, "Random seed (default: from config)");
  app.add_option("--workers", common.workers, "Worker threads")->check(CLI::Range(1, 256));
  app.add_option("--audit", common.audit_path, "Rule-firing audit output");

  std::string in, out, db, model, plan, pred, gold, kb;
  std::optional<int> epochs;
  bool self_loops = false, use_labels = false;
  std::vector<std::string> where;

  auto* ingest = app.add_subcommand("ingest", "Validate and normalize a table document");
  ingest->add_option("-i,--input", in)->required();
  ingest->add_option("-o,--output", out)->required();

  auto* supervise = app.add_subcommand("supervise", "Weak labels from a reference database");
  supervise->add_option("-i,--input", in)->required();
  supervise->add_option("--db", db)->required();
  supervise->add_option("-o,--output", out)->required();

  auto* annotate = app.add_subcommand("annotate", "Rule-based header labels");
  annotate->add_option("-i,--input", in)->required();
  annotate->add_option("-o,--output", out)->required();

  auto* augment = app.add_subcommand("augment", "Balance property frequencies");
  augment->add_option("-i,--input", in)->required();
  augment->add_option("-o,--output", out)->required();
  augment->add_option("--plan", plan, "Write the augmentation plan");

  auto* train = app.add_subcommand("train", "Train the header classifier");
  train->add_option("-i,--input", in)->required();
  train->add_option("-o,--output", out)->required();
  train->add_option("--epochs", epochs)->check(CLI::Range(1, 100000));
  train->add_flag("--self-loops", self_loops, "Add self loops to attention");

  auto* extract = app.add_subcommand("extract", "Classify, post-process and extract tuples");
  extract->add_option("-i,--input", in)->required();
  extract->add_option("-o,--output", out)->required();
  auto* model_opt = extract->add_option("--model", model, "Trained classifier");
  extract->add_flag("--use-labels", use_labels, "Trust the labels in the input")
      ->excludes(model_opt);

  auto* link = app.add_subcommand("link", "Build the knowledge base");
  link->add_option("-i,--input", in)->required();
  link->add_option("-o,--output", out)->required();

  auto* eval = app.add_subcommand("eval", "Strict precision, recall and F1");
  eval->add_option("--pred", pred)->required();
  eval->add_option("--gold", gold)->required();
  eval->add_option("-o,--output", out);

  auto* screen = app.add_subcommand("screen", "Multi-property screening");
  screen->add_option("--kb", kb)->required();
  screen->add_option("--where", where, "property>=value@unit, repeatable");
  screen->add_option("-o,--output", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*ingest) return RunIngest(common, in, out);
    if (*supervise) return RunSupervise(common, in, db, out);
    if (*annotate) return RunAnnotate(common, in, out);
    if (*augment) return RunAugment(common, in, out, plan);
    if (*train) return RunTrain(common, in, out, epochs, self_loops);
    if (*extract) return RunExtract(common, in, out, model, use_labels);
    if (*link) return RunLink(common, in, out);
    if (*eval) return RunEval(common, pred, gold, out);
    if (*screen) return RunScreen(common, kb, where, out);
  } catch (const TrainingError& e) {
    std::cerr << "tabkb: " << e.what() << "\n";
    return kExitInternal;
  } catch (const QueryError& e) {
    std::cerr << "tabkb: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "tabkb: " << e.what() << "\n";
    return kExitData;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "tabkb: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "tabkb: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace tabkb

int main(int argc, char** argv) { return tabkb::Main(argc, argv); }
