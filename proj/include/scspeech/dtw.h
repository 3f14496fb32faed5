// scspeech/dtw.h

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

#ifndef SCSPEECH_DTW_H_
#define SCSPEECH_DTW_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scspeech/audio.h"
#include "scspeech/common.h"
#include "scspeech/stft.h"

namespace scspeech {

// Monotone frame-level warping path from (0,0) to (I-1,J-1) with steps
// (1,0), (0,1), (1,1). Cost is the Euclidean distance between frame
// vectors, accumulated along the path.
struct AlignmentPath {
  std::vector<std::pair<int, int>> pairs;
  real total_cost = 0.0;

  void validate(int n_a, int n_b) const;
};

// Exact DP over column-major feature matrices [dims][frames]. Ties between
// predecessors break diagonal first, then (1,0), then (0,1).
AlignmentPath dtw_align_features(const std::vector<real> &a, int frames_a,
                                 const std::vector<real> &b, int frames_b,
                                 int dims);

AlignmentPath dtw_align(const MelSpectrogram &a, const MelSpectrogram &b);

// Frame path interpolated to sample resolution: each path step spans hop
// sub-steps, so the output has hop * (steps) + 1 index pairs, clipped to
// the signal bounds.
struct SampleAlignment {
  std::vector<int64_t> whsp_indices;
  std::vector<int64_t> norm_indices;

  int64_t length() const {
    return static_cast<int64_t>(whsp_indices.size());
  }
  void validate(int64_t len_w, int64_t len_n) const;
};

SampleAlignment bootstrap_path(const AlignmentPath &path, int hop,
                               int64_t len_w, int64_t len_n);

// Gathers both signals along the sample alignment so they end up with
// identical lengths.
std::pair<AudioClip, AudioClip> equalize_lengths(const AudioClip &whsp,
                                                 const AudioClip &norm,
                                                 const SampleAlignment &sa);

// Cache record so training never re-runs DTW: magic "SCAL", pair id,
// path length, (i,j) pairs as u32.
void write_alignment_file(const std::string &path, const std::string &pair_id,
                          const AlignmentPath &alignment);
AlignmentPath read_alignment_file(const std::string &path,
                                  std::string *pair_id_out);

}  // namespace scspeech

#endif  // SCSPEECH_DTW_H_
