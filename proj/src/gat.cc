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

#include "tabkb/gat.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "nlohmann/json.hpp"
#include "tabkb/labels.h"
#include "tabkb/text.h"

namespace tabkb {
namespace {

constexpr int kGid = static_cast<int>(Label::kMaterialId);

Matrix Glorot(int rows, int cols, std::mt19937_64& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  std::uniform_real_distribution<double> u(-limit, limit);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  }
  return m;
}

Matrix RowSoftmax(const Matrix& z) {
  Matrix p(z.rows(), z.cols());
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const double mx = z.row(i).maxCoeff();
    p.row(i) = (z.row(i).array() - mx).exp().matrix();
    p.row(i) /= p.row(i).sum();
  }
  return p;
}

struct Forward {
  Tape tape;
  std::vector<Tape::Var> params;
  Tape::Var logits = -1;
  int isolated = 0;
};

void DropoutMask(Matrix& mask, double rate, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double keep = 1.0 / (1.0 - rate);
  for (Eigen::Index i = 0; i < mask.size(); ++i) {
    mask.data()[i] = u(rng) < rate ? 0.0 : keep;
  }
}

void RunForward(Forward& f, const GatModel& m, const TableGraph& g, double dropout,
                std::mt19937_64* rng, bool track) {
  if (g.features.cols() != m.dims.in_dim) {
    throw ModelConfigError("feature width " + std::to_string(g.features.cols()) +
                           " does not match model input width " + std::to_string(m.dims.in_dim));
  }
  Tape& t = f.tape;
  auto param = [&](const Matrix& v) {
    Tape::Var var = track ? t.Parameter(v) : t.Constant(v);
    f.params.push_back(var);
    return var;
  };
  const int K = m.dims.heads;
  std::vector<Tape::Var> w1(K), a1(K), w2(K), a2(K);
  for (int k = 0; k < K; ++k) w1[k] = param(m.w1[k]);
  for (int k = 0; k < K; ++k) a1[k] = param(m.a1[k]);
  for (int k = 0; k < K; ++k) w2[k] = param(m.w2[k]);
  for (int k = 0; k < K; ++k) a2[k] = param(m.a2[k]);
  const Tape::Var wc = param(m.wc);
  const Tape::Var bc = param(m.bc);

  const Adjacency adj1 = AllNodeAdjacency(g, m.dims.self_loops);
  const Adjacency adj2 = HeaderAdjacency(g, m.dims.self_loops);
  for (int i = 0; i < adj1.num_dsts(); ++i) {
    if (adj1.offsets[i] == adj1.offsets[i + 1]) ++f.isolated;
  }

  const Tape::Var x = t.Constant(g.features);
  std::vector<Tape::Var> heads1;
  for (int k = 0; k < K; ++k) {
    heads1.push_back(t.GatAggregate(t.MatMul(x, w1[k]), a1[k], adj1, m.dims.slope));
  }
  Tape::Var h1 = t.Elu(t.ConcatCols(heads1));
  if (dropout > 0.0 && rng != nullptr) {
    Matrix mask(t.Value(h1).rows(), t.Value(h1).cols());
    DropoutMask(mask, dropout, *rng);
    h1 = t.Scale(h1, mask);
  }
  std::vector<Tape::Var> heads2;
  for (int k = 0; k < K; ++k) {
    heads2.push_back(t.GatAggregate(t.MatMul(h1, w2[k]), a2[k], adj2, m.dims.slope));
  }
  const Tape::Var h2 = t.Elu(t.Mean(heads2));
  f.logits = t.AddRow(t.MatMul(h2, wc), bc);
}

Adjacency BuildAdjacency(const TableGraph& g, const std::vector<int>& dsts, bool self_loops) {
  std::vector<std::vector<int>> incoming(g.num_nodes());
  for (const GraphEdge& e : g.edges) incoming[e.dst].push_back(e.src);
  Adjacency adj;
  adj.dsts = dsts;
  adj.offsets.push_back(0);
  for (int v : dsts) {
    if (self_loops) adj.sources.push_back(v);
    adj.sources.insert(adj.sources.end(), incoming[v].begin(), incoming[v].end());
    adj.offsets.push_back(static_cast<int>(adj.sources.size()));
  }
  return adj;
}

nlohmann::json MatrixToJson(const Matrix& m) {
  std::vector<double> data(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data[i * m.cols() + j] = m(i, j);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix MatrixFromJson(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols,
                      const std::string& name) {
  if (j.at("rows").get<Eigen::Index>() != rows || j.at("cols").get<Eigen::Index>() != cols) {
    throw ModelConfigError("tensor " + name + " has shape " + std::to_string(j.at("rows").get<long>()) +
                           "x" + std::to_string(j.at("cols").get<long>()) + ", expected " +
                           std::to_string(rows) + "x" + std::to_string(cols));
  }
  const auto data = j.at("data").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw ModelConfigError("tensor " + name + " has the wrong number of values");
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = data[i * cols + k];
  }
  return m;
}

}  // namespace

TrainConfig TrainConfig::FromDefaults(const TrainDefaults& d) {
  TrainConfig c;
  c.lambda = d.lambda;
  c.learning_rate = d.learning_rate;
  c.epochs = d.epochs;
  c.dropout = d.dropout;
  c.hidden1 = d.hidden1;
  c.hidden2 = d.hidden2;
  c.heads = d.heads;
  c.seed = d.seed;
  c.alpha_threshold = d.alpha_threshold;
  c.clip_norm = d.clip_norm;
  return c;
}

TrainConfig TrainConfig::FullScale() {
  TrainConfig c;
  c.hidden1 = 2048;
  c.hidden2 = 1024;
  return c;
}

void TrainConfig::Validate() const {
  if (!(lambda >= 0.0)) throw ModelConfigError("lambda must be >= 0");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ModelConfigError("dropout must be in [0, 1)");
  if (!(alpha_threshold >= 0.0 && alpha_threshold <= 1.0)) {
    throw ModelConfigError("alpha threshold must be in [0, 1]");
  }
  if (!(learning_rate >= 0.0)) throw ModelConfigError("learning rate must be >= 0");
  if (epochs < 0) throw ModelConfigError("epochs must be >= 0");
  if (heads < 1 || hidden1 < heads || hidden1 % heads != 0) {
    throw ModelConfigError("hidden1 must be a positive multiple of the head count");
  }
  if (hidden2 < 1) throw ModelConfigError("hidden2 must be positive");
  if (!(clip_norm > 0.0)) throw ModelConfigError("clip norm must be positive");
}

std::vector<Matrix*> GatModel::Parameters() {
  std::vector<Matrix*> out;
  for (auto* group : {&w1, &a1, &w2, &a2}) {
    for (Matrix& m : *group) out.push_back(&m);
  }
  out.push_back(&wc);
  out.push_back(&bc);
  return out;
}

std::vector<std::string> GatModel::ParameterNames() const {
  std::vector<std::string> out;
  for (const char* group : {"w1", "a1", "w2", "a2"}) {
    for (int k = 0; k < dims.heads; ++k) out.push_back(std::string(group) + "_" + std::to_string(k));
  }
  out.push_back("wc");
  out.push_back("bc");
  return out;
}

GatModel InitModel(const GatDims& dims, uint64_t seed) {
  if (dims.heads < 1 || dims.hidden1 % dims.heads != 0 || dims.hidden1 < dims.heads ||
      dims.hidden2 < 1 || dims.in_dim < 1 || dims.num_classes < 2) {
    throw ModelConfigError("inconsistent model dimensions");
  }
  GatModel m;
  m.dims = dims;
  m.seed = seed;
  std::mt19937_64 rng(seed);
  const int d1 = dims.hidden1 / dims.heads;
  for (int k = 0; k < dims.heads; ++k) {
    m.w1.push_back(Glorot(dims.in_dim, d1, rng));
    m.a1.push_back(Glorot(2 * d1, 1, rng));
  }
  for (int k = 0; k < dims.heads; ++k) {
    m.w2.push_back(Glorot(dims.hidden1, dims.hidden2, rng));
    m.a2.push_back(Glorot(2 * dims.hidden2, 1, rng));
  }
  m.wc = Glorot(dims.hidden2, dims.num_classes, rng);
  m.bc = Matrix::Zero(1, dims.num_classes);
  return m;
}

Adjacency AllNodeAdjacency(const TableGraph& g, bool self_loops) {
  std::vector<int> dsts(g.num_nodes());
  std::iota(dsts.begin(), dsts.end(), 0);
  return BuildAdjacency(g, dsts, self_loops);
}

Adjacency HeaderAdjacency(const TableGraph& g, bool self_loops) {
  std::vector<int> dsts;
  for (int h = 0; h < g.num_headers(); ++h) dsts.push_back(g.header_node(h));
  return BuildAdjacency(g, dsts, self_loops);
}

std::vector<double> AttentionCoefficients(const GatModel& model, int layer, int head,
                                          const Matrix& features, const TableGraph& g) {
  if (head < 0 || head >= model.dims.heads || (layer != 1 && layer != 2)) {
    throw ModelConfigError("no such layer/head");
  }
  const Matrix& w = layer == 1 ? model.w1[head] : model.w2[head];
  const Matrix& a = layer == 1 ? model.a1[head] : model.a2[head];
  if (features.cols() != w.rows()) throw ModelConfigError("feature width does not match layer");
  const Adjacency adj = AllNodeAdjacency(g, model.dims.self_loops);
  return AttentionWeights(features * w, a, adj, model.dims.slope);
}

HeaderPrediction GatForward(const GatModel& model, const TableGraph& g, double dropout,
                            std::mt19937_64* rng) {
  Forward f;
  RunForward(f, model, g, dropout, rng, false);
  HeaderPrediction pred;
  pred.probs = RowSoftmax(f.tape.Value(f.logits));
  pred.rows = g.rows;
  pred.cols = g.cols;
  pred.isolated_nodes = f.isolated;
  return pred;
}

std::vector<double> UniquenessRatios(const Table& table) {
  std::vector<double> out;
  auto ratio = [](const std::vector<std::string>& line) {
    std::set<std::string> unique;
    int nonempty = 0;
    for (const auto& cell : line) {
      const std::string_view v = Trim(cell);
      if (v.empty()) continue;
      ++nonempty;
      unique.emplace(v);
    }
    return nonempty == 0 ? 0.0 : static_cast<double>(unique.size()) / nonempty;
  };
  for (size_t r = 0; r < table.num_rows(); ++r) out.push_back(ratio(table.Line(Axis::kRow, r)));
  for (size_t c = 0; c < table.num_cols(); ++c) out.push_back(ratio(table.Line(Axis::kCol, c)));
  return out;
}

ConstraintBreakdown ConstraintLoss(const Matrix& probs, int rows, int cols,
                                   const std::vector<double>& unique_ratio, Matrix* dprobs) {
  const int H = rows + cols;
  const Eigen::VectorXd g = probs.col(kGid);
  const Eigen::VectorXd p = probs.middleCols(kFirstProperty, kNumProperties).rowwise().sum();
  const Eigen::VectorXd ones_r = Eigen::VectorXd::Ones(rows);
  const Eigen::VectorXd ones_c = Eigen::VectorXd::Ones(cols);
  const Eigen::VectorXd ones_h = Eigen::VectorXd::Ones(H);

  const Matrix m1 = (g.head(rows) * ones_c.transpose() + ones_r * p.tail(cols).transpose()).array() - 1.0;
  const Matrix m2 = (p.head(rows) * ones_c.transpose() + ones_r * g.tail(cols).transpose()).array() - 1.0;
  const Matrix m3 = (p.head(rows) * ones_c.transpose() + ones_r * p.tail(cols).transpose()).array() - 1.0;
  Matrix gg = (g * ones_h.transpose() + ones_h * g.transpose()).array() - 1.0;
  gg.triangularView<Eigen::Lower>().setConstant(-1.0);  // keep i < j only

  ConstraintBreakdown b;
  b.gid_prop = m1.cwiseMax(0.0).sum() + m2.cwiseMax(0.0).sum();
  b.prop_prop = m3.cwiseMax(0.0).sum();
  b.gid_gid = gg.cwiseMax(0.0).sum();
  int n_id = 0;
  std::vector<int> id_members;
  for (int h = 0; h < H; ++h) {
    if (g[h] > 0.25) {
      ++n_id;
      b.gid_id += std::max(0.0, 0.5 - unique_ratio.at(h));
    }
  }
  b.num_terms = 2 * rows * cols + rows * cols + H * (H - 1) / 2 + n_id;
  const double total = b.gid_prop + b.gid_gid + b.prop_prop + b.gid_id;
  b.loss = b.num_terms > 0 ? total / b.num_terms : 0.0;

  if (dprobs != nullptr) {
    *dprobs = Matrix::Zero(probs.rows(), probs.cols());
    if (b.num_terms == 0) return b;
    const double inv = 1.0 / b.num_terms;
    auto active = [](const Matrix& m) { return (m.array() > 0.0).cast<double>().matrix(); };
    const Matrix a1 = active(m1), a2 = active(m2), a3 = active(m3), ag = active(gg);
    Eigen::VectorXd dg = Eigen::VectorXd::Zero(H), dp = Eigen::VectorXd::Zero(H);
    dg.head(rows) += a1.rowwise().sum();
    dp.tail(cols) += a1.colwise().sum().transpose();
    dp.head(rows) += a2.rowwise().sum();
    dg.tail(cols) += a2.colwise().sum().transpose();
    dp.head(rows) += a3.rowwise().sum();
    dp.tail(cols) += a3.colwise().sum().transpose();
    dg += ag.rowwise().sum() + ag.colwise().sum().transpose();
    dprobs->col(kGid) = dg * inv;
    for (int c = kFirstProperty; c <= kLastProperty; ++c) dprobs->col(c) = dp * inv;
  }
  return b;
}

LossValue TotalLoss(const Matrix& probs, const std::vector<int>& gold, int rows, int cols,
                    const std::vector<double>& unique_ratio, double lambda) {
  LossValue v;
  const int H = static_cast<int>(probs.rows());
  for (int h = 0; h < H; ++h) v.cross_entropy -= std::log(probs(h, gold.at(h)));
  v.cross_entropy /= H;
  v.constraint = ConstraintLoss(probs, rows, cols, unique_ratio);
  v.total = v.cross_entropy + lambda * v.constraint.loss;
  return v;
}

TrainExample MakeExample(const Table& table, const EmbeddingProvider& provider, int positional_dim) {
  TrainExample ex;
  ex.id = table.id();
  ex.graph = BuildGraph(table, provider, positional_dim);
  ex.gold = table.row_labels;
  ex.gold.insert(ex.gold.end(), table.col_labels.begin(), table.col_labels.end());
  ex.unique_ratio = UniquenessRatios(table);
  return ex;
}

LossValue LossAndGradients(const GatModel& model, const TrainExample& ex, double lambda,
                           double dropout, std::mt19937_64* rng, std::vector<Matrix>* grads) {
  Forward f;
  RunForward(f, model, ex.graph, dropout, rng, grads != nullptr);
  const Matrix& z = f.tape.Value(f.logits);
  const int H = static_cast<int>(z.rows());
  if (static_cast<int>(ex.gold.size()) != H) {
    throw ModelConfigError("example " + ex.id + " has " + std::to_string(ex.gold.size()) +
                           " gold labels for " + std::to_string(H) + " headers");
  }
  const Matrix probs = RowSoftmax(z);
  LossValue v;
  for (int h = 0; h < H; ++h) {
    const double mx = z.row(h).maxCoeff();
    const double lse = mx + std::log((z.row(h).array() - mx).exp().sum());
    v.cross_entropy -= z(h, ex.gold[h]) - lse;
  }
  v.cross_entropy /= H;
  Matrix dprobs;
  v.constraint = ConstraintLoss(probs, ex.graph.rows, ex.graph.cols, ex.unique_ratio,
                                grads != nullptr ? &dprobs : nullptr);
  v.total = v.cross_entropy + lambda * v.constraint.loss;
  if (grads == nullptr) return v;

  Matrix dlogits = probs;
  for (int h = 0; h < H; ++h) dlogits(h, ex.gold[h]) -= 1.0;
  dlogits /= H;
  if (lambda != 0.0) {
    const Matrix pd = probs.cwiseProduct(dprobs);
    const Eigen::VectorXd s = pd.rowwise().sum();
    dlogits += lambda * (pd - probs.cwiseProduct(s * Eigen::RowVectorXd::Ones(probs.cols())));
  }
  const Tape::Var loss = f.tape.Op(Matrix::Constant(1, 1, v.total), {f.logits},
                                   [dlogits](const Matrix& g, const std::vector<Matrix*>& gr) {
                                     if (gr[0]) *gr[0] += g(0, 0) * dlogits;
                                   });
  f.tape.Backward(loss);
  grads->clear();
  for (Tape::Var p : f.params) grads->push_back(f.tape.Grad(p));
  return v;
}

TrainTrace Train(GatModel& model, const std::vector<TrainExample>& data, const TrainConfig& cfg,
                 const EpochCallback& on_epoch) {
  cfg.Validate();
  if (data.empty()) throw TrainingError("empty training set");
  std::mt19937_64 rng(cfg.seed);
  std::vector<size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Matrix*> params = model.Parameters();
  TrainTrace trace;
  std::vector<Matrix> grads;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double sum = 0.0, csum = 0.0;
    for (size_t idx : order) {
      const TrainExample& ex = data[idx];
      const LossValue v = LossAndGradients(model, ex, cfg.lambda, cfg.dropout, &rng, &grads);
      if (!std::isfinite(v.total)) {
        throw TrainingError("non-finite loss on table " + ex.id + " at epoch " + std::to_string(epoch));
      }
      sum += v.total;
      csum += v.constraint.loss;
      double norm2 = 0.0;
      for (const Matrix& g : grads) norm2 += g.squaredNorm();
      const double norm = std::sqrt(norm2);
      const double scale = norm > cfg.clip_norm ? cfg.clip_norm / norm : 1.0;
      for (size_t i = 0; i < params.size(); ++i) {
        *params[i] -= (cfg.learning_rate * scale) * grads[i];
      }
    }
    trace.loss.push_back(sum / data.size());
    trace.constraint.push_back(csum / data.size());
    if (on_epoch) on_epoch(epoch, trace.loss.back());
  }
  return trace;
}

std::vector<int> PredictLabels(const HeaderPrediction& pred, double alpha_threshold) {
  std::vector<int> labels(pred.probs.rows());
  for (Eigen::Index h = 0; h < pred.probs.rows(); ++h) {
    Eigen::Index best = 0;
    const double p = pred.probs.row(h).maxCoeff(&best);
    int label = static_cast<int>(best);
    if (IsCompositionRole(label) && p < alpha_threshold) label = 0;
    labels[h] = label;
  }
  return labels;
}

std::vector<TensorCheck> GradientCheck(const GatModel& model, const TrainExample& ex,
                                       double lambda, double h) {
  std::vector<Matrix> analytic;
  LossAndGradients(model, ex, lambda, 0.0, nullptr, &analytic);
  GatModel work = model;
  std::vector<Matrix*> params = work.Parameters();
  const auto names = work.ParameterNames();
  std::vector<TensorCheck> out;
  for (size_t t = 0; t < params.size(); ++t) {
    Matrix& p = *params[t];
    Matrix numeric(p.rows(), p.cols());
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      const double orig = p.data()[i];
      p.data()[i] = orig + h;
      const double up = LossAndGradients(work, ex, lambda, 0.0, nullptr, nullptr).total;
      p.data()[i] = orig - h;
      const double down = LossAndGradients(work, ex, lambda, 0.0, nullptr, nullptr).total;
      p.data()[i] = orig;
      numeric.data()[i] = (up - down) / (2.0 * h);
    }
    TensorCheck c;
    c.name = names[t];
    c.max_abs_analytic = analytic[t].cwiseAbs().maxCoeff();
    c.max_abs_numeric = numeric.cwiseAbs().maxCoeff();
    const double denom = std::max(c.max_abs_analytic, c.max_abs_numeric);
    c.rel_error = denom == 0.0 ? 0.0 : (analytic[t] - numeric).cwiseAbs().maxCoeff() / denom;
    out.push_back(c);
  }
  return out;
}

std::string ModelToJson(const GatModel& model) {
  nlohmann::ordered_json j;
  j["format"] = "tabkb-gat";
  j["version"] = 1;
  j["dims"] = {{"in_dim", model.dims.in_dim},   {"hidden1", model.dims.hidden1},
               {"hidden2", model.dims.hidden2}, {"heads", model.dims.heads},
               {"num_classes", model.dims.num_classes}, {"slope", model.dims.slope},
               {"self_loops", model.dims.self_loops}};
  j["seed"] = model.seed;
  GatModel copy = model;
  const auto params = copy.Parameters();
  const auto names = copy.ParameterNames();
  nlohmann::ordered_json tensors;
  for (size_t i = 0; i < params.size(); ++i) tensors[names[i]] = MatrixToJson(*params[i]);
  j["tensors"] = tensors;
  return j.dump();
}

GatModel ModelFromJson(const std::string& text, const GatDims* expected) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelConfigError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  try {
    if (j.value("format", "") != "tabkb-gat") throw ModelConfigError("not a tabkb-gat checkpoint");
    if (j.value("version", 0) != 1) throw ModelConfigError("unsupported checkpoint version");
    const auto& d = j.at("dims");
    GatDims dims;
    dims.in_dim = d.at("in_dim").get<int>();
    dims.hidden1 = d.at("hidden1").get<int>();
    dims.hidden2 = d.at("hidden2").get<int>();
    dims.heads = d.at("heads").get<int>();
    dims.num_classes = d.at("num_classes").get<int>();
    dims.slope = d.at("slope").get<double>();
    dims.self_loops = d.at("self_loops").get<bool>();
    if (expected != nullptr && !(dims == *expected)) {
      throw ModelConfigError("checkpoint dims (in " + std::to_string(dims.in_dim) + ", hidden " +
                             std::to_string(dims.hidden1) + "/" + std::to_string(dims.hidden2) +
                             ", heads " + std::to_string(dims.heads) +
                             ") do not match the configured model (in " +
                             std::to_string(expected->in_dim) + ", hidden " +
                             std::to_string(expected->hidden1) + "/" +
                             std::to_string(expected->hidden2) + ", heads " +
                             std::to_string(expected->heads) + ")");
    }
    GatModel m = InitModel(dims, j.at("seed").get<uint64_t>());
    auto params = m.Parameters();
    const auto names = m.ParameterNames();
    const auto& tensors = j.at("tensors");
    for (size_t i = 0; i < params.size(); ++i) {
      if (!tensors.contains(names[i])) throw ModelConfigError("checkpoint lacks tensor " + names[i]);
      *params[i] = MatrixFromJson(tensors.at(names[i]), params[i]->rows(), params[i]->cols(), names[i]);
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ModelConfigError(std::string("malformed checkpoint: ") + e.what());
  }
}

void SaveModel(const GatModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelConfigError("cannot write " + path);
  out << ModelToJson(model) << '\n';
}

GatModel LoadModel(const std::string& path, const GatDims* expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ModelFromJson(ss.str(), expected);
}

}  // namespace tabkb
