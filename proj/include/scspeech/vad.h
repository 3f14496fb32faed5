// scspeech/vad.h

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

#ifndef SCSPEECH_VAD_H_
#define SCSPEECH_VAD_H_

#include <vector>

#include "scspeech/audio.h"
#include "scspeech/common.h"

namespace scspeech {

// Frame-energy voice activity detection: 25 ms frames, 10 ms shift,
// speech = frame RMS above the estimated noise floor plus margin_db,
// with a hangover extension on both sides of the detected region.
struct VadConfig {
  real frame_seconds = 0.025;
  real shift_seconds = 0.010;
  real margin_db = 6.0;
  real hangover_seconds = 0.200;
  real silence_floor_db = -120.0;  // stands in for log(0) on digital silence

  void validate() const;
};

struct TrimResult {
  AudioClip clip;
  bool all_silence = false;
  int64_t start = 0;  // sample offset of the retained slice
  int64_t end = 0;    // one past the last retained sample
};

// Per-frame speech decision, exposed for tests and diagnostics.
std::vector<bool> detect_speech_frames(const AudioClip &clip,
                                       const VadConfig &vad);

// Removes leading and trailing non-speech. The result is always a
// contiguous slice of the input; an all-silence clip yields one frame of
// audio with the all_silence flag set.
TrimResult trim_silence(const AudioClip &clip, const VadConfig &vad = {});

}  // namespace scspeech

#endif  // SCSPEECH_VAD_H_
