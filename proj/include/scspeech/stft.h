// scspeech/stft.h

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

#ifndef SCSPEECH_STFT_H_
#define SCSPEECH_STFT_H_

#include <string>
#include <vector>

#include "scspeech/audio.h"
#include "scspeech/common.h"

namespace scspeech {

// Shared analysis parameters: window 1024, hop 256, 80 mel bands at
// 22.05 kHz. The same configuration feeds alignment and the models.
struct StftConfig {
  int win_length = 1024;
  int hop_length = 256;
  int n_mels = 80;
  int sample_rate = 22050;
  int fft_size = 1024;
  real fmin = 0.0;
  real fmax = 11025.0;
  real log_floor = 1e-5;  // amplitude clamp before the natural log

  void validate() const;
};

// Natural-log mel amplitude matrix, n_mels rows by n_frames columns.
struct MelSpectrogram {
  std::vector<real> values;  // row-major [n_mels][n_frames]
  int n_mels = 0;
  int n_frames = 0;
  StftConfig config;

  real &at(int band, int frame) { return values[band * n_frames + frame]; }
  real at(int band, int frame) const { return values[band * n_frames + frame]; }
};

// STFT + mel filterbank analysis with centered reflect padding, so
// n_frames == len / hop + 1. Also provides the adjoint pass used when the
// analysis sits inside a training graph.
class MelAnalyzer {
 public:
  explicit MelAnalyzer(const StftConfig &config);

  const StftConfig &config() const { return config_; }
  int n_frames(int64_t n_samples) const {
    return static_cast<int>(n_samples / config_.hop_length) + 1;
  }

  MelSpectrogram analyze(const std::vector<real> &samples) const;

  // d(loss)/d(samples) given d(loss)/d(mel values); mel must be the output
  // of analyze() on the same samples.
  std::vector<real> adjoint(const std::vector<real> &samples,
                            const MelSpectrogram &mel,
                            const std::vector<real> &mel_grad) const;

  // Magnitude spectrogram (fft_size/2+1 rows) with the same framing; used
  // by the spectral-inversion vocoder.
  std::vector<real> magnitude(const std::vector<real> &samples,
                              int *n_frames_out) const;

  // Least-norm style mel-to-linear mapping via the normalized transpose.
  std::vector<real> mel_to_linear(const MelSpectrogram &mel) const;

  const std::vector<real> &filterbank() const { return filterbank_; }
  std::vector<real> band_center_freqs() const;

 private:
  void frame_spectrum(const std::vector<real> &samples, int frame,
                      std::vector<real> *mag) const;

  StftConfig config_;
  std::vector<real> window_;      // Hann, win_length
  std::vector<real> filterbank_;  // [n_mels][fft_size/2+1]
};

MelSpectrogram mel_spectrogram(const AudioClip &clip, const StftConfig &config);

// Binary matrix file: magic "SCMF", u32 n_mels, n_frames, hop, sr, then
// little-endian float32 values row-major.
void write_mel_file(const std::string &path, const MelSpectrogram &mel);
MelSpectrogram read_mel_file(const std::string &path);

}  // namespace scspeech

#endif  // SCSPEECH_STFT_H_
