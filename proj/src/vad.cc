// scspeech/vad.cc

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

#include "scspeech/vad.h"

#include <algorithm>
#include <cmath>

namespace scspeech {

void VadConfig::validate() const {
  SC_CHECK(frame_seconds > 0 && shift_seconds > 0 &&
               shift_seconds <= frame_seconds,
           "need 0 < shift <= frame");
  SC_CHECK(hangover_seconds >= 0, "hangover must be non-negative");
}

std::vector<bool> detect_speech_frames(const AudioClip &clip,
                                       const VadConfig &vad) {
  clip.validate();
  vad.validate();
  const int64_t frame_len = std::max<int64_t>(
      1, static_cast<int64_t>(std::llround(vad.frame_seconds *
                                           clip.sample_rate)));
  const int64_t shift = std::max<int64_t>(
      1, static_cast<int64_t>(std::llround(vad.shift_seconds *
                                           clip.sample_rate)));
  const int64_t len = clip.length();
  const int64_t n_frames = len < frame_len ? 1 : (len - frame_len) / shift + 1;

  std::vector<real> rms_db(n_frames);
  for (int64_t t = 0; t < n_frames; ++t) {
    const int64_t start = t * shift;
    const int64_t stop = std::min(len, start + frame_len);
    real energy = 0.0;
    for (int64_t i = start; i < stop; ++i) {
      energy += clip.samples[i] * clip.samples[i];
    }
    const real rms = std::sqrt(energy / std::max<int64_t>(1, stop - start));
    rms_db[t] = rms > 0.0 ? 20.0 * std::log10(rms) : vad.silence_floor_db;
    rms_db[t] = std::max(rms_db[t], vad.silence_floor_db);
  }

  // noise floor = 10th percentile of the frame levels
  std::vector<real> sorted = rms_db;
  std::sort(sorted.begin(), sorted.end());
  const real noise_floor = sorted[static_cast<size_t>(
      std::min<int64_t>(n_frames - 1, n_frames / 10))];
  const real threshold = noise_floor + vad.margin_db;

  std::vector<bool> speech(n_frames);
  for (int64_t t = 0; t < n_frames; ++t) speech[t] = rms_db[t] > threshold;
  return speech;
}

TrimResult trim_silence(const AudioClip &clip, const VadConfig &vad) {
  const std::vector<bool> speech = detect_speech_frames(clip, vad);
  const int64_t frame_len = std::max<int64_t>(
      1, static_cast<int64_t>(std::llround(vad.frame_seconds *
                                           clip.sample_rate)));
  const int64_t shift = std::max<int64_t>(
      1, static_cast<int64_t>(std::llround(vad.shift_seconds *
                                           clip.sample_rate)));
  const int64_t len = clip.length();

  int64_t first = -1, last = -1;
  for (int64_t t = 0; t < static_cast<int64_t>(speech.size()); ++t) {
    if (speech[t]) {
      if (first < 0) first = t;
      last = t;
    }
  }

  TrimResult result;
  if (first < 0) {
    result.all_silence = true;
    result.start = 0;
    result.end = std::min(len, frame_len);
  } else {
    const int64_t hangover = static_cast<int64_t>(
        std::llround(vad.hangover_seconds * clip.sample_rate));
    result.start = std::max<int64_t>(0, first * shift - hangover);
    result.end = std::min(len, last * shift + frame_len + hangover);
  }
  result.clip.sample_rate = clip.sample_rate;
  result.clip.samples.assign(clip.samples.begin() + result.start,
                             clip.samples.begin() + result.end);
  return result;
}

}  // namespace scspeech
