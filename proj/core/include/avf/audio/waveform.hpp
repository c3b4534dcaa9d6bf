// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

namespace avf::audio {

inline constexpr int kTargetSampleRate = 16000;

/// PCM audio with interleaved channels, samples nominally in [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int sample_rate_hz = kTargetSampleRate;
  int channels = 1;

  std::size_t frames() const noexcept {
    return channels > 0 ? samples.size() / static_cast<std::size_t>(channels) : 0;
  }
  double duration_s() const noexcept {
    return static_cast<double>(frames()) / sample_rate_hz;
  }
  friend bool operator==(const Waveform&, const Waveform&) = default;
};

}  // namespace avf::audio
