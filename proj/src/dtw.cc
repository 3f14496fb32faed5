// scspeech/dtw.cc

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

#include "scspeech/dtw.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

namespace scspeech {

void AlignmentPath::validate(int n_a, int n_b) const {
  SC_CHECK(!pairs.empty(), "empty alignment path");
  SC_CHECK(pairs.front() == std::make_pair(0, 0), "path must start at (0,0)");
  SC_CHECK(pairs.back() == std::make_pair(n_a - 1, n_b - 1),
           "path must end at (" << n_a - 1 << "," << n_b - 1 << ")");
  for (size_t k = 1; k < pairs.size(); ++k) {
    const int di = pairs[k].first - pairs[k - 1].first;
    const int dj = pairs[k].second - pairs[k - 1].second;
    SC_CHECK((di == 0 || di == 1) && (dj == 0 || dj == 1) && (di + dj > 0),
             "illegal path step at " << k);
  }
  SC_CHECK(total_cost >= 0.0, "negative path cost");
}

AlignmentPath dtw_align_features(const std::vector<real> &a, int frames_a,
                                 const std::vector<real> &b, int frames_b,
                                 int dims) {
  SC_CHECK(frames_a >= 1 && frames_b >= 1, "both sequences must be non-empty");
  SC_CHECK(a.size() == static_cast<size_t>(dims) * frames_a &&
               b.size() == static_cast<size_t>(dims) * frames_b,
           "feature matrix shape mismatch");

  const int I = frames_a, J = frames_b;
  auto frame_cost = [&](int i, int j) {
    real acc = 0.0;
    for (int d = 0; d < dims; ++d) {
      const real diff = a[static_cast<size_t>(d) * I + i] -
                        b[static_cast<size_t>(d) * J + j];
      acc += diff * diff;
    }
    return std::sqrt(acc);
  };

  const real inf = std::numeric_limits<real>::infinity();
  std::vector<real> dp(static_cast<size_t>(I) * J, inf);
  // 0 = diagonal, 1 = (1,0), 2 = (0,1); diagonal preferred on ties
  std::vector<uint8_t> from(static_cast<size_t>(I) * J, 0);
  auto at = [J](int i, int j) { return static_cast<size_t>(i) * J + j; };

  dp[at(0, 0)] = frame_cost(0, 0);
  for (int i = 0; i < I; ++i) {
    for (int j = 0; j < J; ++j) {
      if (i == 0 && j == 0) continue;
      real best = inf;
      uint8_t step = 0;
      if (i > 0 && j > 0 && dp[at(i - 1, j - 1)] < best) {
        best = dp[at(i - 1, j - 1)];
        step = 0;
      }
      if (i > 0 && dp[at(i - 1, j)] < best) {
        best = dp[at(i - 1, j)];
        step = 1;
      }
      if (j > 0 && dp[at(i, j - 1)] < best) {
        best = dp[at(i, j - 1)];
        step = 2;
      }
      dp[at(i, j)] = best + frame_cost(i, j);
      from[at(i, j)] = step;
    }
  }

  AlignmentPath path;
  path.total_cost = dp[at(I - 1, J - 1)];
  int i = I - 1, j = J - 1;
  while (true) {
    path.pairs.emplace_back(i, j);
    if (i == 0 && j == 0) break;
    switch (from[at(i, j)]) {
      case 0: --i; --j; break;
      case 1: --i; break;
      default: --j; break;
    }
  }
  std::reverse(path.pairs.begin(), path.pairs.end());
  return path;
}

AlignmentPath dtw_align(const MelSpectrogram &a, const MelSpectrogram &b) {
  SC_CHECK(a.n_mels == b.n_mels, "mel band count mismatch: " << a.n_mels
           << " vs " << b.n_mels);
  return dtw_align_features(a.values, a.n_frames, b.values, b.n_frames,
                            a.n_mels);
}

void SampleAlignment::validate(int64_t len_w, int64_t len_n) const {
  SC_CHECK(whsp_indices.size() == norm_indices.size(),
           "index sequences must have equal length");
  SC_CHECK(!whsp_indices.empty(), "empty sample alignment");
  for (size_t k = 0; k < whsp_indices.size(); ++k) {
    SC_CHECK(whsp_indices[k] >= 0 && whsp_indices[k] < len_w,
             "whispered index out of bounds at " << k);
    SC_CHECK(norm_indices[k] >= 0 && norm_indices[k] < len_n,
             "normal index out of bounds at " << k);
    if (k > 0) {
      SC_CHECK(whsp_indices[k] >= whsp_indices[k - 1] &&
                   norm_indices[k] >= norm_indices[k - 1],
               "indices must be non-decreasing");
    }
  }
}

SampleAlignment bootstrap_path(const AlignmentPath &path, int hop,
                               int64_t len_w, int64_t len_n) {
  SC_CHECK(hop > 0, "hop must be positive");
  SC_CHECK(!path.pairs.empty(), "empty alignment path");
  const int last_i = path.pairs.back().first;
  const int last_j = path.pairs.back().second;
  // Frame count under centered analysis is len/hop + 1, so the last frame
  // index must equal len/hop for each signal.
  SC_CHECK(last_i == len_w / hop && last_j == len_n / hop,
           "signal lengths inconsistent with path frame counts");

  SampleAlignment sa;
  const size_t steps = path.pairs.size() - 1;
  sa.whsp_indices.reserve(steps * hop + 1);
  sa.norm_indices.reserve(steps * hop + 1);
  auto clip_w = [len_w](int64_t v) {
    return std::min(len_w - 1, std::max<int64_t>(0, v));
  };
  auto clip_n = [len_n](int64_t v) {
    return std::min(len_n - 1, std::max<int64_t>(0, v));
  };
  for (size_t m = 0; m < steps; ++m) {
    const int64_t i0 = static_cast<int64_t>(path.pairs[m].first) * hop;
    const int64_t j0 = static_cast<int64_t>(path.pairs[m].second) * hop;
    const int64_t di = path.pairs[m + 1].first - path.pairs[m].first;
    const int64_t dj = path.pairs[m + 1].second - path.pairs[m].second;
    // Each frame step spans hop unit sub-steps along the arc; coordinate
    // increments are 0 or 1 per sub-step, so no rounding is involved.
    for (int t = 0; t < hop; ++t) {
      sa.whsp_indices.push_back(clip_w(i0 + di * t));
      sa.norm_indices.push_back(clip_n(j0 + dj * t));
    }
  }
  sa.whsp_indices.push_back(
      clip_w(static_cast<int64_t>(path.pairs.back().first) * hop));
  sa.norm_indices.push_back(
      clip_n(static_cast<int64_t>(path.pairs.back().second) * hop));
  sa.validate(len_w, len_n);
  return sa;
}

std::pair<AudioClip, AudioClip> equalize_lengths(const AudioClip &whsp,
                                                 const AudioClip &norm,
                                                 const SampleAlignment &sa) {
  SC_CHECK(sa.length() > 0, "empty sample alignment");
  sa.validate(whsp.length(), norm.length());
  AudioClip out_w, out_n;
  out_w.sample_rate = whsp.sample_rate;
  out_n.sample_rate = norm.sample_rate;
  out_w.samples.resize(sa.length());
  out_n.samples.resize(sa.length());
  for (int64_t k = 0; k < sa.length(); ++k) {
    out_w.samples[k] = whsp.samples[sa.whsp_indices[k]];
    out_n.samples[k] = norm.samples[sa.norm_indices[k]];
  }
  return {std::move(out_w), std::move(out_n)};
}

namespace {
constexpr char kAlignMagic[4] = {'S', 'C', 'A', 'L'};
}

void write_alignment_file(const std::string &path, const std::string &pair_id,
                          const AlignmentPath &alignment) {
  std::ofstream os(path, std::ios::binary);
  SC_CHECK(os.good(), "cannot write alignment file: " << path);
  os.write(kAlignMagic, 4);
  const uint32_t id_len = static_cast<uint32_t>(pair_id.size());
  os.write(reinterpret_cast<const char *>(&id_len), 4);
  os.write(pair_id.data(), id_len);
  const uint64_t n = alignment.pairs.size();
  os.write(reinterpret_cast<const char *>(&n), 8);
  for (const auto &[i, j] : alignment.pairs) {
    const uint32_t ui = static_cast<uint32_t>(i), uj = static_cast<uint32_t>(j);
    os.write(reinterpret_cast<const char *>(&ui), 4);
    os.write(reinterpret_cast<const char *>(&uj), 4);
  }
  const double cost = alignment.total_cost;
  os.write(reinterpret_cast<const char *>(&cost), 8);
  SC_CHECK(os.good(), "short write: " << path);
}

AlignmentPath read_alignment_file(const std::string &path,
                                  std::string *pair_id_out) {
  std::ifstream is(path, std::ios::binary);
  SC_CHECK(is.good(), "cannot open alignment file: " << path);
  char magic[4];
  is.read(magic, 4);
  SC_CHECK(is.good() && std::memcmp(magic, kAlignMagic, 4) == 0,
           "bad alignment file magic: " << path);
  uint32_t id_len = 0;
  is.read(reinterpret_cast<char *>(&id_len), 4);
  std::string pair_id(id_len, '\0');
  is.read(pair_id.data(), id_len);
  uint64_t n = 0;
  is.read(reinterpret_cast<char *>(&n), 8);
  SC_CHECK(is.good() && n > 0, "truncated alignment file: " << path);
  AlignmentPath alignment;
  alignment.pairs.resize(n);
  for (auto &[i, j] : alignment.pairs) {
    uint32_t ui = 0, uj = 0;
    is.read(reinterpret_cast<char *>(&ui), 4);
    is.read(reinterpret_cast<char *>(&uj), 4);
    i = static_cast<int>(ui);
    j = static_cast<int>(uj);
  }
  double cost = 0.0;
  is.read(reinterpret_cast<char *>(&cost), 8);
  SC_CHECK(is.good(), "truncated alignment file: " << path);
  alignment.total_cost = cost;
  if (pair_id_out) *pair_id_out = pair_id;
  return alignment;
}

}  // namespace scspeech
