// scspeech/audio.cc

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

#include "scspeech/audio.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace scspeech {

void AudioClip::validate() const {
  SC_CHECK(sample_rate > 0, "sample_rate must be positive");
  SC_CHECK(!samples.empty(), "clip must hold at least one sample");
  for (real s : samples) {
    SC_CHECK(std::isfinite(s), "non-finite sample");
  }
}

AudioClip normalize_volume(const AudioClip &clip, real target_peak) {
  SC_CHECK(target_peak > 0.0 && target_peak <= 1.0,
           "target_peak must be in (0, 1]");
  real peak = 0.0;
  for (real s : clip.samples) peak = std::max(peak, std::abs(s));
  if (peak == 0.0) return clip;  // silent fixed point
  AudioClip out = clip;
  real gain = target_peak / peak;
  for (real &s : out.samples) s *= gain;
  return out;
}

namespace {

// Hann-windowed sinc interpolation, 32 zero crossings per side.
constexpr int kSincHalfWidth = 32;

real windowed_sinc(real x, real cutoff) {
  // cutoff in (0, 1], relative to the input Nyquist frequency
  real ax = std::abs(x);
  real span = kSincHalfWidth / cutoff;
  if (ax >= span) return 0.0;
  real core = (x == 0.0) ? cutoff : std::sin(M_PI * cutoff * x) / (M_PI * x);
  real win = 0.5 * (1.0 + std::cos(M_PI * ax / span));
  return core * win;
}

}  // namespace

AudioClip resample(const AudioClip &clip, int target_rate) {
  SC_CHECK(target_rate > 0, "target_rate must be positive");
  if (target_rate == clip.sample_rate) return clip;
  clip.validate();

  const int64_t in_len = clip.length();
  const real ratio = static_cast<real>(target_rate) / clip.sample_rate;
  const int64_t out_len = std::max<int64_t>(
      1, static_cast<int64_t>(std::llround(in_len * ratio)));
  // Low-pass at the smaller Nyquist when downsampling.
  const real cutoff = std::min<real>(1.0, ratio) * 0.975;
  const real taps_span = kSincHalfWidth / cutoff;

  AudioClip out;
  out.sample_rate = target_rate;
  out.samples.resize(out_len);
  for (int64_t n = 0; n < out_len; ++n) {
    const real t_in = n / ratio;
    const int64_t j0 = static_cast<int64_t>(std::ceil(t_in - taps_span));
    const int64_t j1 = static_cast<int64_t>(std::floor(t_in + taps_span));
    real acc = 0.0;
    for (int64_t j = std::max<int64_t>(0, j0);
         j <= std::min<int64_t>(in_len - 1, j1); ++j) {
      acc += clip.samples[j] * windowed_sinc(t_in - j, cutoff);
    }
    out.samples[n] = acc;
  }
  return out;
}

namespace {

template <typename T>
void read_le(std::istream &is, T *v) {
  is.read(reinterpret_cast<char *>(v), sizeof(T));
}

template <typename T>
void write_le(std::ostream &os, T v) {
  os.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

struct WavFormat {
  uint16_t audio_format = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits_per_sample = 0;
};

}  // namespace

AudioClip read_wav(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  SC_CHECK(is.good(), "cannot open wav file: " << path);

  char riff[4], wave[4];
  uint32_t riff_size = 0;
  is.read(riff, 4);
  read_le(is, &riff_size);
  is.read(wave, 4);
  SC_CHECK(is.good() && std::memcmp(riff, "RIFF", 4) == 0 &&
               std::memcmp(wave, "WAVE", 4) == 0,
           "not a RIFF/WAVE file: " << path);

  WavFormat fmt;
  std::vector<char> payload;
  bool have_fmt = false, have_data = false;
  while (is.good()) {
    char id[4];
    uint32_t size = 0;
    is.read(id, 4);
    read_le(is, &size);
    if (!is.good()) break;
    if (std::memcmp(id, "fmt ", 4) == 0) {
      read_le(is, &fmt.audio_format);
      read_le(is, &fmt.channels);
      read_le(is, &fmt.sample_rate);
      uint32_t byte_rate;
      uint16_t block_align;
      read_le(is, &byte_rate);
      read_le(is, &block_align);
      read_le(is, &fmt.bits_per_sample);
      if (size > 16) is.seekg(size - 16, std::ios::cur);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      payload.resize(size);
      is.read(payload.data(), size);
      SC_CHECK(is.good(), "truncated wav data chunk: " << path);
      have_data = true;
    } else {
      is.seekg(size + (size & 1), std::ios::cur);
    }
    if (have_fmt && have_data) break;
  }
  SC_CHECK(have_fmt && have_data, "missing fmt/data chunk: " << path);
  SC_CHECK(fmt.channels == 1, "only mono wav supported: " << path);

  AudioClip clip;
  clip.sample_rate = static_cast<int>(fmt.sample_rate);
  if (fmt.audio_format == 1 && fmt.bits_per_sample == 16) {
    size_t n = payload.size() / 2;
    clip.samples.resize(n);
    const int16_t *p = reinterpret_cast<const int16_t *>(payload.data());
    for (size_t i = 0; i < n; ++i) clip.samples[i] = p[i] / 32768.0;
  } else if (fmt.audio_format == 3 && fmt.bits_per_sample == 32) {
    size_t n = payload.size() / 4;
    clip.samples.resize(n);
    const float *p = reinterpret_cast<const float *>(payload.data());
    for (size_t i = 0; i < n; ++i) clip.samples[i] = p[i];
  } else {
    SC_CHECK(false, "unsupported wav encoding (format=" << fmt.audio_format
                    << ", bits=" << fmt.bits_per_sample << "): " << path);
  }
  SC_CHECK(!clip.samples.empty(), "empty wav file: " << path);
  return clip;
}

namespace {

void write_wav_header(std::ostream &os, uint16_t audio_format, int sample_rate,
                      uint16_t bits, uint32_t data_bytes) {
  os.write("RIFF", 4);
  write_le<uint32_t>(os, 36 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  write_le<uint32_t>(os, 16);
  write_le<uint16_t>(os, audio_format);
  write_le<uint16_t>(os, 1);  // mono
  write_le<uint32_t>(os, static_cast<uint32_t>(sample_rate));
  uint32_t byte_rate = sample_rate * bits / 8;
  write_le<uint32_t>(os, byte_rate);
  write_le<uint16_t>(os, bits / 8);
  write_le<uint16_t>(os, bits);
  os.write("data", 4);
  write_le<uint32_t>(os, data_bytes);
}

}  // namespace

void write_wav_pcm16(const std::string &path, const AudioClip &clip) {
  clip.validate();
  std::ofstream os(path, std::ios::binary);
  SC_CHECK(os.good(), "cannot write wav file: " << path);
  write_wav_header(os, 1, clip.sample_rate, 16,
                   static_cast<uint32_t>(clip.samples.size() * 2));
  for (real s : clip.samples) {
    real clamped = std::clamp<real>(s, -1.0, 1.0);
    int32_t q = static_cast<int32_t>(std::lrint(clamped * 32767.0));
    write_le<int16_t>(os, static_cast<int16_t>(q));
  }
  SC_CHECK(os.good(), "short write: " << path);
}

void write_wav_float32(const std::string &path, const AudioClip &clip) {
  clip.validate();
  std::ofstream os(path, std::ios::binary);
  SC_CHECK(os.good(), "cannot write wav file: " << path);
  write_wav_header(os, 3, clip.sample_rate, 32,
                   static_cast<uint32_t>(clip.samples.size() * 4));
  for (real s : clip.samples) {
    write_le<float>(os, static_cast<float>(s));
  }
  SC_CHECK(os.good(), "short write: " << path);
}

}  // namespace scspeech
