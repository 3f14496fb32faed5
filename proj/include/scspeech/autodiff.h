// scspeech/autodiff.h

// Copyright 2026  scspeech authors

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

#ifndef SCSPEECH_AUTODIFF_H_
#define SCSPEECH_AUTODIFF_H_

#include <functional>
#include <memory>
#include <vector>

#include "scspeech/stft.h"
#include "scspeech/tensor.h"

namespace scspeech {

// Reverse-mode autodiff over a per-step tape. Parameters are long-lived
// nodes; everything else is rebuilt each training step.
struct Node {
  Tensor value;
  Tensor grad;  // allocated on first contribution
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> inputs;
  std::function<void(Node &)> backward_fn;

  void ensure_grad() {
    if (grad.data.empty()) grad = Tensor(value.shape);
  }
  bool has_grad() const { return !grad.data.empty(); }
  void zero_grad() {
    if (has_grad()) std::fill(grad.data.begin(), grad.data.end(), 0.0);
  }
};

using NodePtr = std::shared_ptr<Node>;

NodePtr make_param(Tensor value);
NodePtr make_const(Tensor value);

class Tape {
 public:
  NodePtr make(Tensor value, std::vector<NodePtr> inputs,
               std::function<void(Node &)> backward_fn);
  // Seeds grad(root) = 1 and sweeps the tape in reverse creation order.
  void backward(const NodePtr &root);
  size_t size() const { return order_.size(); }

 private:
  std::vector<NodePtr> order_;
};

enum class PadMode { kZero, kReflect };

// x: [C][T] unless stated otherwise; weights follow the layout noted per op.
NodePtr pad1d(Tape &tape, NodePtr x, int left, int right, PadMode mode);
// w: [out][in][k]
NodePtr conv1d(Tape &tape, NodePtr x, NodePtr w, NodePtr b, int stride = 1,
               int dilation = 1);
// w: [in][out][k]; output length (T-1)*stride + k minus the crops
NodePtr conv_transpose1d(Tape &tape, NodePtr x, NodePtr w, NodePtr b,
                         int stride, int crop_left, int crop_right);
NodePtr leaky_relu(Tape &tape, NodePtr x, real slope);
NodePtr relu(Tape &tape, NodePtr x);
NodePtr tanh_op(Tape &tape, NodePtr x);
NodePtr abs_op(Tape &tape, NodePtr x);
NodePtr add(Tape &tape, NodePtr a, NodePtr b);
NodePtr sub(Tape &tape, NodePtr a, NodePtr b);
// elementwise a*x + b
NodePtr affine(Tape &tape, NodePtr x, real a, real b);
NodePtr mean_all(Tape &tape, NodePtr x);
NodePtr add_scalars(Tape &tape, const std::vector<NodePtr> &terms);
NodePtr crop_time(Tape &tape, NodePtr x, int start, int length);
// kernel 4, stride 2, pad 1, padding excluded from the mean; out = ceil(T/2)
NodePtr avg_pool_half(Tape &tape, NodePtr x);
// w[o] = g[o] * v[o] / ||v[o]||, v: [out][in][k] or [in][out][k] with
// norms taken over all trailing dims per leading index
NodePtr weight_norm(Tape &tape, NodePtr v, NodePtr g);
// value copy that blocks gradient flow
NodePtr stop_grad(Tape &tape, NodePtr x);
// waveform [1][T] -> log-mel [n_mels][T/hop+1], differentiable
NodePtr mel_op(Tape &tape, NodePtr wav, const MelAnalyzer &analyzer);

// mean |a - b| over all elements
NodePtr mean_abs_diff(Tape &tape, NodePtr a, NodePtr b);

}  // namespace scspeech

#endif  // SCSPEECH_AUTODIFF_H_
