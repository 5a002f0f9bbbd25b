// core/include/tinyst/autodiff.h

// Copyright 2026  The tinyst Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef TINYST_AUTODIFF_H_
#define TINYST_AUTODIFF_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "tinyst/rng.h"
#include "tinyst/tensor.h"

namespace tinyst {

// Reverse-mode differentiation over a tape of 2-D tensor nodes. Each op
// records a closure that pushes its output gradient back to its inputs;
// backward() sweeps closures in reverse creation order, which is a valid
// topological order because inputs always precede outputs.
//
// A tape is built for one forward pass and supports one backward() call;
// node gradients are zero-initialized at creation and accumulated in place.
class Tape {
 public:
  using NodeId = int;

  // rng/dropout_rate drive the dropout op; with training=false (or rate 0)
  // dropout is the identity.
  explicit Tape(bool training = false, Rng* rng = nullptr,
                double dropout_rate = 0.0);

  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Constant input; gradient is tracked but goes nowhere.
  NodeId leaf(Tensor value);
  // Parameter input: value is copied in, and backward() accumulates the
  // node gradient into *grad_sink (which must outlive the tape).
  NodeId param(const Tensor& value, Tensor* grad_sink);

  const Tensor& val(NodeId id) const { return nodes_[id].val; }
  const Tensor& grad(NodeId id) const { return nodes_[id].grad; }

  NodeId add(NodeId a, NodeId b);
  // a (R x C) plus row vector b (1 x C) broadcast over rows.
  NodeId add_rowvec(NodeId a, NodeId b);
  NodeId scale(NodeId a, double s);
  NodeId matmul(NodeId a, NodeId b);
  // a (m x k) times b (n x k) transposed -> (m x n).
  NodeId matmul_nt(NodeId a, NodeId b);
  NodeId relu(NodeId a);
  // Per-row normalization over columns (eps 1e-5), then out = xhat * gain
  // + bias with gain/bias 1 x C row vectors.
  NodeId layernorm(NodeId x, NodeId gain, NodeId bias);
  NodeId softmax_rows(NodeId a);
  // Adds -1e9 strictly above the diagonal; exp underflows to exactly 0 in
  // the following softmax, so causality is exact, not approximate.
  NodeId causal_mask(NodeId a);
  NodeId dropout(NodeId a);
  // Depthwise temporal convolution, kernel 3, zero padding. x: T x C,
  // w: 3 x C, b: 1 x C.
  NodeId dwconv3(NodeId x, NodeId w, NodeId b);
  // Row gather: out row t = table row ids[t].
  NodeId embed(const std::vector<int>& ids, NodeId table);
  // Stacks k consecutive frames into one row: out is ceil(T/k) x (k*C),
  // zero-padded at the tail. The model's only subsampling mechanism.
  NodeId frame_stack(NodeId x, std::size_t k);
  NodeId col_slice(NodeId a, std::size_t c0, std::size_t c1);
  NodeId col_concat(const std::vector<NodeId>& parts);
  // Externally computed scalar f(input): value and d f / d input are
  // supplied by the caller. Used for the smoothed loss head.
  NodeId scalar_chain(NodeId input, double value, Tensor dvalue_dinput);
  // Scalar value sum_i coeffs[i] * scalars[i], each input 1 x 1.
  NodeId weighted_sum(const std::vector<NodeId>& scalars,
                      const std::vector<double>& coeffs);

  void backward(NodeId loss);

  std::size_t size() const { return nodes_.size(); }
  bool training() const { return training_; }

 private:
  struct Node {
    Tensor val;
    Tensor grad;
    std::function<void(Tape&)> bw;  // empty for leaves
  };

  NodeId push(Tensor val, std::function<void(Tape&)> bw);
  Tensor& grad_mut(NodeId id) { return nodes_[id].grad; }

  std::vector<Node> nodes_;
  bool training_ = false;
  Rng* rng_ = nullptr;
  double dropout_rate_ = 0.0;
};

}  // namespace tinyst

#endif  // TINYST_AUTODIFF_H_
