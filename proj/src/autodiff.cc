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

#include "tabkb/autodiff.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tabkb {
namespace {

double Leaky(double z, double slope) { return z > 0 ? z : slope * z; }

}  // namespace

std::vector<double> AttentionWeights(const Matrix& wh, const Matrix& attn, const Adjacency& adj,
                                     double slope) {
  const int d = static_cast<int>(wh.cols());
  const Eigen::VectorXd s = wh * attn.topRows(d).col(0);
  const Eigen::VectorXd t = wh * attn.bottomRows(d).col(0);
  std::vector<double> alpha(adj.sources.size());
  for (int i = 0; i < adj.num_dsts(); ++i) {
    const int begin = adj.offsets[i], end = adj.offsets[i + 1];
    if (begin == end) continue;
    double mx = -std::numeric_limits<double>::infinity();
    for (int e = begin; e < end; ++e) {
      alpha[e] = Leaky(s[adj.dsts[i]] + t[adj.sources[e]], slope);
      mx = std::max(mx, alpha[e]);
    }
    double sum = 0.0;
    for (int e = begin; e < end; ++e) {
      alpha[e] = std::exp(alpha[e] - mx);
      sum += alpha[e];
    }
    for (int e = begin; e < end; ++e) alpha[e] /= sum;
  }
  return alpha;
}

Tape::Var Tape::Constant(Matrix value) {
  nodes_.push_back(Node{std::move(value), {}, {}, nullptr, false});
  return static_cast<Var>(nodes_.size() - 1);
}

Tape::Var Tape::Parameter(Matrix value) {
  nodes_.push_back(Node{std::move(value), {}, {}, nullptr, true});
  return static_cast<Var>(nodes_.size() - 1);
}

Tape::Var Tape::Op(Matrix value, std::vector<Var> inputs, BackwardFn backward) {
  bool needs = false;
  for (Var v : inputs) needs = needs || nodes_[v].needs_grad;
  nodes_.push_back(Node{std::move(value), {}, std::move(inputs), std::move(backward), needs});
  return static_cast<Var>(nodes_.size() - 1);
}

const Matrix& Tape::Grad(Var v) {
  Node& n = nodes_[v];
  if (n.grad.size() == 0) n.grad = Matrix::Zero(n.value.rows(), n.value.cols());
  return n.grad;
}

void Tape::Backward(Var out) {
  for (Node& n : nodes_) n.grad.resize(0, 0);
  nodes_[out].grad = Matrix::Ones(nodes_[out].value.rows(), nodes_[out].value.cols());
  for (Var v = out; v >= 0; --v) {
    Node& n = nodes_[v];
    if (!n.backward || !n.needs_grad || n.grad.size() == 0) continue;
    std::vector<Matrix*> grads;
    grads.reserve(n.inputs.size());
    for (Var in : n.inputs) {
      Node& m = nodes_[in];
      if (!m.needs_grad) {
        grads.push_back(nullptr);
        continue;
      }
      if (m.grad.size() == 0) m.grad = Matrix::Zero(m.value.rows(), m.value.cols());
      grads.push_back(&m.grad);
    }
    n.backward(n.grad, grads);
  }
}

Tape::Var Tape::MatMul(Var a, Var b) {
  const Matrix& A = Value(a);
  const Matrix& B = Value(b);
  return Op(A * B, {a, b}, [this, a, b](const Matrix& g, const std::vector<Matrix*>& grads) {
    if (grads[0]) grads[0]->noalias() += g * Value(b).transpose();
    if (grads[1]) grads[1]->noalias() += Value(a).transpose() * g;
  });
}

Tape::Var Tape::AddRow(Var a, Var row) {
  Matrix out = Value(a);
  out.rowwise() += Value(row).row(0);
  return Op(std::move(out), {a, row}, [](const Matrix& g, const std::vector<Matrix*>& grads) {
    if (grads[0]) *grads[0] += g;
    if (grads[1]) *grads[1] += g.colwise().sum();
  });
}

Tape::Var Tape::Elu(Var a) {
  const Matrix& x = Value(a);
  Matrix out = x.unaryExpr([](double v) { return v > 0 ? v : std::expm1(v); });
  return Op(std::move(out), {a}, [this, a](const Matrix& g, const std::vector<Matrix*>& grads) {
    if (!grads[0]) return;
    const Matrix& x = Value(a);
    *grads[0] += g.cwiseProduct(x.unaryExpr([](double v) { return v > 0 ? 1.0 : std::exp(v); }));
  });
}

Tape::Var Tape::Scale(Var a, const Matrix& mask) {
  return Op(Value(a).cwiseProduct(mask), {a},
            [mask](const Matrix& g, const std::vector<Matrix*>& grads) {
              if (grads[0]) *grads[0] += g.cwiseProduct(mask);
            });
}

Tape::Var Tape::ConcatCols(const std::vector<Var>& parts) {
  const Eigen::Index rows = Value(parts.front()).rows();
  Eigen::Index cols = 0;
  for (Var p : parts) cols += Value(p).cols();
  Matrix out(rows, cols);
  std::vector<Eigen::Index> starts;
  Eigen::Index c = 0;
  for (Var p : parts) {
    starts.push_back(c);
    out.middleCols(c, Value(p).cols()) = Value(p);
    c += Value(p).cols();
  }
  return Op(std::move(out), parts,
            [starts](const Matrix& g, const std::vector<Matrix*>& grads) {
              for (size_t i = 0; i < grads.size(); ++i) {
                if (grads[i]) *grads[i] += g.middleCols(starts[i], grads[i]->cols());
              }
            });
}

Tape::Var Tape::Mean(const std::vector<Var>& parts) {
  Matrix out = Value(parts.front());
  for (size_t i = 1; i < parts.size(); ++i) out += Value(parts[i]);
  const double inv = 1.0 / static_cast<double>(parts.size());
  out *= inv;
  return Op(std::move(out), parts, [inv](const Matrix& g, const std::vector<Matrix*>& grads) {
    for (Matrix* gr : grads) {
      if (gr) *gr += inv * g;
    }
  });
}

Tape::Var Tape::GatAggregate(Var wh, Var attn, const Adjacency& adj, double slope) {
  const Matrix& WH = Value(wh);
  const Matrix& A = Value(attn);
  const int d = static_cast<int>(WH.cols());
  const std::vector<double> alpha = AttentionWeights(WH, A, adj, slope);
  Matrix out = Matrix::Zero(adj.num_dsts(), d);
  for (int i = 0; i < adj.num_dsts(); ++i) {
    for (int e = adj.offsets[i]; e < adj.offsets[i + 1]; ++e) {
      out.row(i) += alpha[e] * WH.row(adj.sources[e]);
    }
  }
  return Op(std::move(out), {wh, attn},
            [this, wh, attn, adj, slope, alpha, d](const Matrix& g,
                                                   const std::vector<Matrix*>& grads) {
              const Matrix& WH = Value(wh);
              const Matrix& A = Value(attn);
              const Eigen::VectorXd a_dst = A.topRows(d).col(0);
              const Eigen::VectorXd a_src = A.bottomRows(d).col(0);
              const Eigen::VectorXd s = WH * a_dst;
              const Eigen::VectorXd t = WH * a_src;
              Eigen::VectorXd ds = Eigen::VectorXd::Zero(WH.rows());
              Eigen::VectorXd dt = Eigen::VectorXd::Zero(WH.rows());
              Matrix dWH = Matrix::Zero(WH.rows(), d);
              for (int i = 0; i < adj.num_dsts(); ++i) {
                const int begin = adj.offsets[i], end = adj.offsets[i + 1];
                if (begin == end) continue;
                const int v = adj.dsts[i];
                double weighted = 0.0;
                std::vector<double> dalpha(end - begin);
                for (int e = begin; e < end; ++e) {
                  const int u = adj.sources[e];
                  dWH.row(u) += alpha[e] * g.row(i);
                  dalpha[e - begin] = g.row(i).dot(WH.row(u));
                  weighted += alpha[e] * dalpha[e - begin];
                }
                for (int e = begin; e < end; ++e) {
                  const int u = adj.sources[e];
                  const double de = alpha[e] * (dalpha[e - begin] - weighted);
                  const double z = s[v] + t[u];
                  const double dz = de * (z > 0 ? 1.0 : slope);
                  ds[v] += dz;
                  dt[u] += dz;
                }
              }
              if (grads[0]) {
                dWH.noalias() += ds * a_dst.transpose();
                dWH.noalias() += dt * a_src.transpose();
                *grads[0] += dWH;
              }
              if (grads[1]) {
                grads[1]->topRows(d).col(0) += WH.transpose() * ds;
                grads[1]->bottomRows(d).col(0) += WH.transpose() * dt;
              }
            });
}

}  // namespace tabkb
