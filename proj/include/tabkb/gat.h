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

#ifndef TABKB_GAT_H_
#define TABKB_GAT_H_

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tabkb/autodiff.h"
#include "tabkb/config.h"
#include "tabkb/graph.h"
#include "tabkb/table.h"

namespace tabkb {

class ModelConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GatDims {
  int in_dim = 72;
  int hidden1 = 64;  // layer-1 width after head concatenation
  int hidden2 = 32;  // layer-2 per-head width (heads are averaged)
  int heads = 4;
  int num_classes = 22;
  double slope = 0.2;
  bool self_loops = false;
  bool operator==(const GatDims&) const = default;
};

struct TrainConfig {
  double lambda = 50.0;
  double learning_rate = 0.05;
  int epochs = 200;
  double dropout = 0.2;
  int hidden1 = 64;
  int hidden2 = 32;
  int heads = 4;
  uint64_t seed = 7;
  double alpha_threshold = 0.7;
  double clip_norm = 5.0;
  bool self_loops = false;

  static TrainConfig FromDefaults(const TrainDefaults& d);
  // 2048/1024 hidden widths.
  static TrainConfig FullScale();
  // Throws ModelConfigError on out-of-range fields.
  void Validate() const;
};

struct GatModel {
  GatDims dims;
  uint64_t seed = 0;
  std::vector<Matrix> w1, a1, w2, a2;  // one per head
  Matrix wc;                           // hidden2 x num_classes
  Matrix bc;                           // 1 x num_classes

  int head_dim1() const { return dims.hidden1 / dims.heads; }
  // Every trainable tensor in a fixed order, with stable names.
  std::vector<Matrix*> Parameters();
  std::vector<std::string> ParameterNames() const;
};

// Glorot-uniform weights from a seeded generator; zero classifier bias.
GatModel InitModel(const GatDims& dims, uint64_t seed);

// Incoming edges of every node (optionally plus itself) and of the header
// nodes only.
Adjacency AllNodeAdjacency(const TableGraph& g, bool self_loops);
Adjacency HeaderAdjacency(const TableGraph& g, bool self_loops);

// Attention weights of one layer-1 head over `features`.
std::vector<double> AttentionCoefficients(const GatModel& model, int layer, int head,
                                          const Matrix& features, const TableGraph& g);

struct HeaderPrediction {
  Matrix probs;  // (rows + cols) x num_classes; row headers first
  int rows = 0;
  int cols = 0;
  int isolated_nodes = 0;  // nodes whose layer-1 update was skipped

  double p_gid(int h) const { return probs(h, 3); }
  double p_prop(int h) const { return probs.row(h).segment(4, 18).sum(); }
};

// Dropout masks are drawn from `rng` when it is non-null.
HeaderPrediction GatForward(const GatModel& model, const TableGraph& g, double dropout = 0.0,
                            std::mt19937_64* rng = nullptr);

// Unique-to-total ratio of the non-empty cells of every header line.
std::vector<double> UniquenessRatios(const Table& table);

struct ConstraintBreakdown {
  double gid_prop = 0.0;  // sums of ReLU'd terms per family
  double gid_gid = 0.0;
  double prop_prop = 0.0;
  double gid_id = 0.0;
  int num_terms = 0;
  double loss = 0.0;  // total / num_terms
};

// Vectorized structural constraint loss. When `dprobs` is non-null it
// receives d(loss)/d(probs) with the term count held fixed.
ConstraintBreakdown ConstraintLoss(const Matrix& probs, int rows, int cols,
                                   const std::vector<double>& unique_ratio,
                                   Matrix* dprobs = nullptr);

struct LossValue {
  double cross_entropy = 0.0;
  ConstraintBreakdown constraint;
  double total = 0.0;
};

LossValue TotalLoss(const Matrix& probs, const std::vector<int>& gold, int rows, int cols,
                    const std::vector<double>& unique_ratio, double lambda);

struct TrainExample {
  std::string id;
  TableGraph graph;
  std::vector<int> gold;  // rows + cols labels, row headers first
  std::vector<double> unique_ratio;
};

TrainExample MakeExample(const Table& table, const EmbeddingProvider& provider, int positional_dim);

// Loss and parameter gradients for one example; dropout is drawn from
// `rng` when non-null.
LossValue LossAndGradients(const GatModel& model, const TrainExample& ex, double lambda,
                           double dropout, std::mt19937_64* rng, std::vector<Matrix>* grads);

struct TrainTrace {
  std::vector<double> loss;        // mean total loss per epoch
  std::vector<double> constraint;  // mean constraint loss per epoch
};

using EpochCallback = std::function<void(int epoch, double loss)>;

TrainTrace Train(GatModel& model, const std::vector<TrainExample>& data, const TrainConfig& cfg,
                 const EpochCallback& on_epoch = nullptr);

// Argmax per header; classes 1..3 below `alpha_threshold` become 0.
std::vector<int> PredictLabels(const HeaderPrediction& pred, double alpha_threshold);

struct TensorCheck {
  std::string name;
  double max_abs_analytic = 0.0;
  double max_abs_numeric = 0.0;
  // max|a - n| / max(max|a|, max|n|), 0 when both vanish.
  double rel_error = 0.0;
};

// Central finite differences over every entry of every parameter tensor
// with dropout off.
std::vector<TensorCheck> GradientCheck(const GatModel& model, const TrainExample& ex,
                                       double lambda, double h = 1e-5);

void SaveModel(const GatModel& model, const std::string& path);
// Throws ModelConfigError on a malformed file, or when `expected` is given
// and the stored dims differ.
GatModel LoadModel(const std::string& path, const GatDims* expected = nullptr);
std::string ModelToJson(const GatModel& model);
GatModel ModelFromJson(const std::string& text, const GatDims* expected = nullptr);

}  // namespace tabkb

#endif  // TABKB_GAT_H_
