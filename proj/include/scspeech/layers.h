// scspeech/layers.h

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

#ifndef SCSPEECH_LAYERS_H_
#define SCSPEECH_LAYERS_H_

#include <string>
#include <utility>
#include <vector>

#include "scspeech/autodiff.h"
#include "scspeech/rng.h"
#include "scspeech/tensor.h"

namespace scspeech {

using NamedParams = std::vector<std::pair<std::string, NodePtr>>;

// Weight-normalized 1-D convolution. With weight_norm disabled the raw
// kernel is the parameter and the gain is unused.
struct Conv1d {
  NodePtr v, g, b;
  int in_ch = 0, out_ch = 0, kernel = 1, stride = 1, dilation = 1;
  int pad_left = 0, pad_right = 0;
  PadMode pad_mode = PadMode::kZero;
  bool weight_norm_enabled = true;

  void init(int in_channels, int out_channels, int kernel_size, Rng *rng,
            real init_std = 0.02);
  NodePtr forward(Tape &tape, NodePtr x) const;
  void collect(const std::string &prefix, NamedParams *out) const;
};

struct ConvTranspose1d {
  NodePtr v, g, b;  // v: [in][out][k]
  int in_ch = 0, out_ch = 0, kernel = 1, stride = 1;
  int crop_left = 0, crop_right = 0;
  bool weight_norm_enabled = true;

  void init(int in_channels, int out_channels, int kernel_size, Rng *rng,
            real init_std = 0.02);
  NodePtr forward(Tape &tape, NodePtr x) const;
  void collect(const std::string &prefix, NamedParams *out) const;
};

inline std::vector<NodePtr> param_list(const NamedParams &named) {
  std::vector<NodePtr> out;
  out.reserve(named.size());
  for (const auto &[name, node] : named) out.push_back(node);
  return out;
}

// Adam with MelGAN's beta defaults.
struct Adam {
  real lr = 1e-4;
  real beta1 = 0.5;
  real beta2 = 0.9;
  real eps = 1e-8;
  int64_t t = 0;
  std::vector<NodePtr> params;
  std::vector<Tensor> m, v;

  explicit Adam(std::vector<NodePtr> parameters, real learning_rate = 1e-4);
  void zero_grad();
  void step();
};

}  // namespace scspeech

#endif  // SCSPEECH_LAYERS_H_
