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

#ifndef TABKB_AUTODIFF_H_
#define TABKB_AUTODIFF_H_

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace tabkb {

using Matrix = Eigen::MatrixXd;

// Incoming-edge lists grouped by destination. Output row i of an
// aggregation belongs to node dsts[i]; its sources are
// sources[offsets[i] .. offsets[i+1]).
struct Adjacency {
  std::vector<int> dsts;
  std::vector<int> offsets;
  std::vector<int> sources;

  int num_dsts() const { return static_cast<int>(dsts.size()); }
  int num_edges() const { return static_cast<int>(sources.size()); }
};

// Attention weights over the incoming edges of every destination, in
// Adjacency order: alpha = softmax over u of LeakyReLU(a_dst . wh_v +
// a_src . wh_u), where attn = [a_dst; a_src]. Destinations with no sources
// get no weights.
std::vector<double> AttentionWeights(const Matrix& wh, const Matrix& attn, const Adjacency& adj,
                                     double slope);

// Reverse-mode tape over dense matrices. Each op records its inputs and a
// backward closure; Backward() replays them in reverse order.
class Tape {
 public:
  using Var = int;
  // grad_out, then the gradient slots of the op's inputs (null when an
  // input does not need a gradient).
  using BackwardFn = std::function<void(const Matrix& grad_out, const std::vector<Matrix*>& grads)>;

  Var Constant(Matrix value);
  Var Parameter(Matrix value);
  Var Op(Matrix value, std::vector<Var> inputs, BackwardFn backward);

  const Matrix& Value(Var v) const { return nodes_[v].value; }
  // Zero matrix when nothing flowed into v.
  const Matrix& Grad(Var v);
  bool NeedsGrad(Var v) const { return nodes_[v].needs_grad; }

  Var MatMul(Var a, Var b);
  Var AddRow(Var a, Var row);
  Var Elu(Var a);
  Var Scale(Var a, const Matrix& mask);  // elementwise product with a constant
  Var ConcatCols(const std::vector<Var>& parts);
  Var Mean(const std::vector<Var>& parts);
  Var GatAggregate(Var wh, Var attn, const Adjacency& adj, double slope);

  // Seeds d(out)/d(out) = 1 for a 1x1 output and propagates.
  void Backward(Var out);

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    std::vector<Var> inputs;
    BackwardFn backward;
    bool needs_grad = false;
  };
  std::vector<Node> nodes_;
};

}  // namespace tabkb

#endif  // TABKB_AUTODIFF_H_
