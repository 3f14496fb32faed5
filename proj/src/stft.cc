// scspeech/stft.cc

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

#include "scspeech/stft.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "scspeech/fft.h"

namespace scspeech {

void StftConfig::validate() const {
  SC_CHECK(hop_length > 0 && hop_length <= win_length &&
               win_length <= fft_size,
           "need hop <= win <= fft");
  SC_CHECK(n_mels >= 1, "n_mels >= 1");
  SC_CHECK(sample_rate > 0, "sample_rate > 0");
  SC_CHECK((fft_size & (fft_size - 1)) == 0, "fft_size must be a power of 2");
  SC_CHECK(fmin >= 0.0 && fmin < fmax && fmax <= sample_rate / 2.0,
           "need 0 <= fmin < fmax <= nyquist");
  SC_CHECK(log_floor > 0.0, "log_floor must be positive");
}

namespace {

inline real hz_to_mel(real f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
inline real mel_to_hz(real m) {
  return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0);
}

// reflect padding without repeating the edge sample
inline int64_t reflect_index(int64_t p, int64_t len) {
  if (len == 1) return 0;
  while (p < 0 || p >= len) {
    if (p < 0) p = -p;
    if (p >= len) p = 2 * len - 2 - p;
  }
  return p;
}

}  // namespace

MelAnalyzer::MelAnalyzer(const StftConfig &config) : config_(config) {
  config_.validate();
  const int win = config_.win_length;
  window_.resize(win);
  for (int n = 0; n < win; ++n) {
    window_[n] = 0.5 * (1.0 - std::cos(2.0 * M_PI * n / win));
  }

  const int n_bins = config_.fft_size / 2 + 1;
  const int n_mels = config_.n_mels;
  filterbank_.assign(static_cast<size_t>(n_mels) * n_bins, 0.0);
  const real mel_lo = hz_to_mel(config_.fmin);
  const real mel_hi = hz_to_mel(config_.fmax);
  std::vector<real> edges(n_mels + 2);
  for (int i = 0; i < n_mels + 2; ++i) {
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (n_mels + 1));
  }
  for (int m = 0; m < n_mels; ++m) {
    const real lo = edges[m], center = edges[m + 1], hi = edges[m + 2];
    for (int k = 0; k < n_bins; ++k) {
      const real f = static_cast<real>(k) * config_.sample_rate /
                     config_.fft_size;
      real w = 0.0;
      if (f > lo && f < hi) {
        w = (f <= center) ? (f - lo) / (center - lo) : (hi - f) / (hi - center);
      }
      filterbank_[static_cast<size_t>(m) * n_bins + k] = w;
    }
  }
}

std::vector<real> MelAnalyzer::band_center_freqs() const {
  const real mel_lo = hz_to_mel(config_.fmin);
  const real mel_hi = hz_to_mel(config_.fmax);
  std::vector<real> centers(config_.n_mels);
  for (int m = 0; m < config_.n_mels; ++m) {
    centers[m] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * (m + 1) /
                           (config_.n_mels + 1));
  }
  return centers;
}

void MelAnalyzer::frame_spectrum(const std::vector<real> &samples, int frame,
                                 std::vector<real> *mag) const {
  const int fft_size = config_.fft_size;
  const int win = config_.win_length;
  const int off = (fft_size - win) / 2;
  const int64_t len = static_cast<int64_t>(samples.size());
  std::vector<cplx> buf(fft_size, cplx(0.0, 0.0));
  const int64_t start = static_cast<int64_t>(frame) * config_.hop_length -
                        win / 2;
  for (int n = 0; n < win; ++n) {
    const int64_t p = reflect_index(start + n, len);
    buf[off + n] = cplx(samples[p] * window_[n], 0.0);
  }
  fft(&buf, false);
  mag->resize(fft_size / 2 + 1);
  for (int k = 0; k <= fft_size / 2; ++k) (*mag)[k] = std::abs(buf[k]);
}

MelSpectrogram MelAnalyzer::analyze(const std::vector<real> &samples) const {
  SC_CHECK(!samples.empty(), "cannot analyze an empty signal");
  const int frames = n_frames(static_cast<int64_t>(samples.size()));
  const int n_bins = config_.fft_size / 2 + 1;
  const int n_mels = config_.n_mels;

  MelSpectrogram mel;
  mel.config = config_;
  mel.n_mels = n_mels;
  mel.n_frames = frames;
  mel.values.assign(static_cast<size_t>(n_mels) * frames, 0.0);

  std::vector<real> mag;
  for (int t = 0; t < frames; ++t) {
    frame_spectrum(samples, t, &mag);
    for (int m = 0; m < n_mels; ++m) {
      const real *fb = &filterbank_[static_cast<size_t>(m) * n_bins];
      real acc = 0.0;
      for (int k = 0; k < n_bins; ++k) acc += fb[k] * mag[k];
      mel.at(m, t) = std::log(std::max(acc, config_.log_floor));
    }
  }
  return mel;
}

std::vector<real> MelAnalyzer::adjoint(const std::vector<real> &samples,
                                       const MelSpectrogram &mel,
                                       const std::vector<real> &mel_grad)
    const {
  SC_CHECK(mel_grad.size() == mel.values.size(), "mel grad shape mismatch");
  const int fft_size = config_.fft_size;
  const int win = config_.win_length;
  const int off = (fft_size - win) / 2;
  const int n_bins = fft_size / 2 + 1;
  const int n_mels = config_.n_mels;
  const int64_t len = static_cast<int64_t>(samples.size());

  std::vector<real> grad(samples.size(), 0.0);
  std::vector<cplx> spec(fft_size), adj(fft_size);
  std::vector<real> mag(n_bins), dmag(n_bins);

  for (int t = 0; t < mel.n_frames; ++t) {
    const int64_t start = static_cast<int64_t>(t) * config_.hop_length -
                          win / 2;
    std::fill(spec.begin(), spec.end(), cplx(0.0, 0.0));
    for (int n = 0; n < win; ++n) {
      const int64_t p = reflect_index(start + n, len);
      spec[off + n] = cplx(samples[p] * window_[n], 0.0);
    }
    fft(&spec, false);
    for (int k = 0; k < n_bins; ++k) mag[k] = std::abs(spec[k]);

    // chain through log(clamp(fb * mag))
    std::fill(dmag.begin(), dmag.end(), 0.0);
    for (int m = 0; m < n_mels; ++m) {
      const real *fb = &filterbank_[static_cast<size_t>(m) * n_bins];
      real acc = 0.0;
      for (int k = 0; k < n_bins; ++k) acc += fb[k] * mag[k];
      if (acc <= config_.log_floor) continue;  // clamped, zero derivative
      const real g = mel_grad[static_cast<size_t>(m) * mel.n_frames + t] / acc;
      if (g == 0.0) continue;
      for (int k = 0; k < n_bins; ++k) dmag[k] += fb[k] * g;
    }

    // d|X|/dX and the adjoint DFT back to the frame samples
    std::fill(adj.begin(), adj.end(), cplx(0.0, 0.0));
    for (int k = 0; k < n_bins; ++k) {
      if (mag[k] > 0.0 && dmag[k] != 0.0) {
        adj[k] = cplx(dmag[k] * spec[k].real() / mag[k],
                      dmag[k] * spec[k].imag() / mag[k]);
      }
    }
    fft(&adj, true);  // adjoint of forward fft restricted to kept bins
    for (int n = 0; n < win; ++n) {
      const int64_t p = reflect_index(start + n, len);
      grad[p] += adj[off + n].real() * static_cast<real>(fft_size) *
                 window_[n];
    }
  }
  return grad;
}

std::vector<real> MelAnalyzer::magnitude(const std::vector<real> &samples,
                                         int *n_frames_out) const {
  SC_CHECK(!samples.empty(), "cannot analyze an empty signal");
  const int frames = n_frames(static_cast<int64_t>(samples.size()));
  const int n_bins = config_.fft_size / 2 + 1;
  std::vector<real> out(static_cast<size_t>(n_bins) * frames, 0.0);
  std::vector<real> mag;
  for (int t = 0; t < frames; ++t) {
    frame_spectrum(samples, t, &mag);
    for (int k = 0; k < n_bins; ++k) {
      out[static_cast<size_t>(k) * frames + t] = mag[k];
    }
  }
  if (n_frames_out) *n_frames_out = frames;
  return out;
}

std::vector<real> MelAnalyzer::mel_to_linear(const MelSpectrogram &mel) const {
  const int n_bins = config_.fft_size / 2 + 1;
  const int n_mels = config_.n_mels;
  std::vector<real> lin(static_cast<size_t>(n_bins) * mel.n_frames, 0.0);
  std::vector<real> bin_norm(n_bins, 0.0);
  for (int m = 0; m < n_mels; ++m) {
    for (int k = 0; k < n_bins; ++k) {
      bin_norm[k] += filterbank_[static_cast<size_t>(m) * n_bins + k];
    }
  }
  for (int t = 0; t < mel.n_frames; ++t) {
    for (int k = 0; k < n_bins; ++k) {
      real acc = 0.0;
      for (int m = 0; m < n_mels; ++m) {
        acc += filterbank_[static_cast<size_t>(m) * n_bins + k] *
               std::exp(mel.at(m, t));
      }
      lin[static_cast<size_t>(k) * mel.n_frames + t] =
          bin_norm[k] > 1e-8 ? acc / bin_norm[k] : 0.0;
    }
  }
  return lin;
}

MelSpectrogram mel_spectrogram(const AudioClip &clip,
                               const StftConfig &config) {
  clip.validate();
  SC_CHECK(clip.sample_rate == config.sample_rate,
           "clip sample rate " << clip.sample_rate
           << " does not match analysis config " << config.sample_rate);
  MelAnalyzer analyzer(config);
  return analyzer.analyze(clip.samples);
}

namespace {
constexpr char kMelMagic[4] = {'S', 'C', 'M', 'F'};
}

void write_mel_file(const std::string &path, const MelSpectrogram &mel) {
  std::ofstream os(path, std::ios::binary);
  SC_CHECK(os.good(), "cannot write mel file: " << path);
  os.write(kMelMagic, 4);
  uint32_t header[4] = {static_cast<uint32_t>(mel.n_mels),
                        static_cast<uint32_t>(mel.n_frames),
                        static_cast<uint32_t>(mel.config.hop_length),
                        static_cast<uint32_t>(mel.config.sample_rate)};
  os.write(reinterpret_cast<const char *>(header), sizeof(header));
  for (real v : mel.values) {
    float f = static_cast<float>(v);
    os.write(reinterpret_cast<const char *>(&f), sizeof(float));
  }
  SC_CHECK(os.good(), "short write: " << path);
}

MelSpectrogram read_mel_file(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  SC_CHECK(is.good(), "cannot open mel file: " << path);
  char magic[4];
  is.read(magic, 4);
  SC_CHECK(is.good() && std::memcmp(magic, kMelMagic, 4) == 0,
           "bad mel file magic: " << path);
  uint32_t header[4];
  is.read(reinterpret_cast<char *>(header), sizeof(header));
  SC_CHECK(is.good(), "truncated mel header: " << path);

  MelSpectrogram mel;
  mel.n_mels = static_cast<int>(header[0]);
  mel.n_frames = static_cast<int>(header[1]);
  mel.config.n_mels = mel.n_mels;
  mel.config.hop_length = static_cast<int>(header[2]);
  mel.config.sample_rate = static_cast<int>(header[3]);
  SC_CHECK(mel.n_mels >= 1 && mel.n_frames >= 1, "bad mel shape: " << path);
  mel.values.resize(static_cast<size_t>(mel.n_mels) * mel.n_frames);
  for (real &v : mel.values) {
    float f;
    is.read(reinterpret_cast<char *>(&f), sizeof(float));
    v = f;
  }
  SC_CHECK(is.good(), "truncated mel data: " << path);
  return mel;
}

}  // namespace scspeech
