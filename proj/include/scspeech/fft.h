// scspeech/fft.h

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

#ifndef SCSPEECH_FFT_H_
#define SCSPEECH_FFT_H_

#include <complex>
#include <vector>

#include "scspeech/common.h"

namespace scspeech {

using cplx = std::complex<real>;

// In-place iterative radix-2 FFT. a.size() must be a power of two.
// inverse=true applies the conjugate transform and the 1/N factor.
void fft(std::vector<cplx> *a, bool inverse);

}  // namespace scspeech

#endif  // SCSPEECH_FFT_H_
