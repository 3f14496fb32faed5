// scspeech/layers.cc

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

#include "scspeech/layers.h"

#include <cmath>

namespace scspeech {

namespace {

Tensor normal_tensor(std::vector<int> shape, Rng *rng, real stddev) {
  Tensor t(std::move(shape));
  for (real &x : t.data) x = rng->normal(0.0, stddev);
  return t;
}

// gain = per-leading-index norm of the raw kernel so the normalized weight
// starts equal to it
Tensor initial_gain(const Tensor &v) {
  const int lead = v.dim(0);
  const int64_t tail = v.size() / lead;
  Tensor g({lead});
  for (int o = 0; o < lead; ++o) {
    real acc = 0.0;
    const real *vr = v.data.data() + o * tail;
    for (int64_t i = 0; i < tail; ++i) acc += vr[i] * vr[i];
    g.data[o] = std::sqrt(std::max<real>(acc, 1e-24));
  }
  return g;
}

}  // namespace

void Conv1d::init(int in_channels, int out_channels, int kernel_size, Rng *rng,
                  real init_std) {
  in_ch = in_channels;
  out_ch = out_channels;
  kernel = kernel_size;
  Tensor vt = normal_tensor({out_ch, in_ch, kernel}, rng, init_std);
  g = make_param(initial_gain(vt));
  v = make_param(std::move(vt));
  b = make_param(Tensor({out_ch}));
}

NodePtr Conv1d::forward(Tape &tape, NodePtr x) const {
  if (pad_left > 0 || pad_right > 0) {
    x = pad1d(tape, x, pad_left, pad_right, pad_mode);
  }
  NodePtr w = weight_norm_enabled ? weight_norm(tape, v, g) : v;
  return conv1d(tape, x, w, b, stride, dilation);
}

void Conv1d::collect(const std::string &prefix, NamedParams *out) const {
  out->emplace_back(prefix + ".v", v);
  out->emplace_back(prefix + ".g", g);
  out->emplace_back(prefix + ".b", b);
}

void ConvTranspose1d::init(int in_channels, int out_channels, int kernel_size,
                           Rng *rng, real init_std) {
  in_ch = in_channels;
  out_ch = out_channels;
  kernel = kernel_size;
  Tensor vt = normal_tensor({in_ch, out_ch, kernel}, rng, init_std);
  g = make_param(initial_gain(vt));
  v = make_param(std::move(vt));
  b = make_param(Tensor({out_ch}));
}

NodePtr ConvTranspose1d::forward(Tape &tape, NodePtr x) const {
  NodePtr w = weight_norm_enabled ? weight_norm(tape, v, g) : v;
  return conv_transpose1d(tape, x, w, b, stride, crop_left, crop_right);
}

void ConvTranspose1d::collect(const std::string &prefix,
                              NamedParams *out) const {
  out->emplace_back(prefix + ".v", v);
  out->emplace_back(prefix + ".g", g);
  out->emplace_back(prefix + ".b", b);
}

Adam::Adam(std::vector<NodePtr> parameters, real learning_rate)
    : lr(learning_rate), params(std::move(parameters)) {
  m.reserve(params.size());
  v.reserve(params.size());
  for (const auto &p : params) {
    m.emplace_back(p->value.shape);
    v.emplace_back(p->value.shape);
  }
}

void Adam::zero_grad() {
  for (auto &p : params) p->zero_grad();
}

void Adam::step() {
  ++t;
  const real bc1 = 1.0 - std::pow(beta1, static_cast<real>(t));
  const real bc2 = 1.0 - std::pow(beta2, static_cast<real>(t));
  for (size_t pi = 0; pi < params.size(); ++pi) {
    Node &p = *params[pi];
    if (!p.has_grad()) continue;
    real *md = m[pi].data.data();
    real *vd = v[pi].data.data();
    for (int64_t i = 0; i < p.value.size(); ++i) {
      const real grad = p.grad.data[i];
      md[i] = beta1 * md[i] + (1.0 - beta1) * grad;
      vd[i] = beta2 * vd[i] + (1.0 - beta2) * grad * grad;
      const real mhat = md[i] / bc1;
      const real vhat = vd[i] / bc2;
      p.value.data[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
  }
}

}  // namespace scspeech
