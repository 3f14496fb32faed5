// scspeech/fft.cc

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

#include "scspeech/fft.h"

#include <cmath>

namespace scspeech {

void fft(std::vector<cplx> *a, bool inverse) {
  const size_t n = a->size();
  SC_CHECK(n > 0 && (n & (n - 1)) == 0, "fft size must be a power of two");
  cplx *d = a->data();

  // bit reversal permutation
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(d[i], d[j]);
  }

  for (size_t len = 2; len <= n; len <<= 1) {
    const real ang = 2.0 * M_PI / len * (inverse ? 1.0 : -1.0);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (size_t j = 0; j < len / 2; ++j) {
        cplx u = d[i + j];
        cplx v = d[i + j + len / 2] * w;
        d[i + j] = u + v;
        d[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (size_t i = 0; i < n; ++i) d[i] /= static_cast<real>(n);
  }
}

}  // namespace scspeech
