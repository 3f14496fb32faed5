// scspeech/tensor.h

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

#ifndef SCSPEECH_TENSOR_H_
#define SCSPEECH_TENSOR_H_

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <vector>

#include "scspeech/common.h"

namespace scspeech {

// Dense row-major tensor of doubles. Rank stays small here: parameters are
// [out][in][k], feature maps are [channels][time], losses are scalars.
struct Tensor {
  std::vector<int> shape;
  std::vector<real> data;

  Tensor() = default;
  explicit Tensor(std::vector<int> s) : shape(std::move(s)) {
    data.assign(numel(shape), 0.0);
  }
  Tensor(std::vector<int> s, std::vector<real> d)
      : shape(std::move(s)), data(std::move(d)) {
    SC_CHECK(data.size() == static_cast<size_t>(numel(shape)),
             "tensor data does not match shape");
  }

  static int64_t numel(const std::vector<int> &s) {
    int64_t n = 1;
    for (int d : s) {
      SC_CHECK(d >= 0, "negative dimension");
      n *= d;
    }
    return n;
  }
  static Tensor scalar(real v) { return Tensor({1}, {v}); }

  int64_t size() const { return static_cast<int64_t>(data.size()); }
  int rank() const { return static_cast<int>(shape.size()); }
  int dim(int i) const { return shape[i]; }
  bool same_shape(const Tensor &other) const { return shape == other.shape; }

  real item() const {
    SC_CHECK(size() == 1, "item() on non-scalar tensor");
    return data[0];
  }

  // [channels][time] accessors
  real &at2(int c, int t) { return data[static_cast<size_t>(c) * shape[1] + t]; }
  real at2(int c, int t) const {
    return data[static_cast<size_t>(c) * shape[1] + t];
  }
};

}  // namespace scspeech

#endif  // SCSPEECH_TENSOR_H_
