// scspeech/audio.h

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

#ifndef SCSPEECH_AUDIO_H_
#define SCSPEECH_AUDIO_H_

#include <string>
#include <vector>

#include "scspeech/common.h"

namespace scspeech {

// Mono waveform. Samples live in [-1, 1]; every other signal type in the
// toolkit is derived from this one.
struct AudioClip {
  std::vector<real> samples;
  int sample_rate = 0;

  int64_t length() const { return static_cast<int64_t>(samples.size()); }
  real duration() const {
    return static_cast<real>(samples.size()) / sample_rate;
  }
  void validate() const;
};

// Peak-normalizes to target_peak in (0, 1]. Silent input is returned
// unchanged, which makes the function total and idempotent.
AudioClip normalize_volume(const AudioClip &clip, real target_peak = 0.95);

// Band-limited resampling (windowed-sinc). target_rate == clip.sample_rate
// short-circuits to the identity.
AudioClip resample(const AudioClip &clip, int target_rate);

// WAV container support: mono, 16-bit PCM or 32-bit IEEE float.
AudioClip read_wav(const std::string &path);
void write_wav_pcm16(const std::string &path, const AudioClip &clip);
void write_wav_float32(const std::string &path, const AudioClip &clip);

}  // namespace scspeech

#endif  // SCSPEECH_AUDIO_H_
