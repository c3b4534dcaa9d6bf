// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "avf/audio/waveform.hpp"

namespace avf::audio {

/// Kaiser-windowed sinc low-pass used by every resampling path.
///
/// The cutoff is kRolloff times the lower of the two Nyquist rates and the
/// kernel extends kZeroCrossings zero crossings of that cutoff on each side.
/// Taps are renormalized per output phase to unit DC gain.
struct SincFilterDesign {
  static constexpr double kRolloff = 0.94;
  static constexpr int kZeroCrossings = 32;
  static constexpr double kKaiserBeta = 8.6;
};

/// Averages channels to mono and resamples to 16 kHz with a polyphase
/// windowed-sinc filter. Output length is round(frames * 16000 / rate).
/// A 16 kHz mono input is returned unchanged.
Waveform resample_to_16k_mono(const Waveform& w);

/// Channel mean; mono input is returned unchanged.
Waveform downmix_to_mono(const Waveform& w);

/// Band-limited resampling of a mono signal between integer rates.
std::vector<double> resample(std::span<const double> x, int in_rate, int out_rate);

/// Band-limited stretch of a mono signal to exactly out_len samples
/// (arbitrary, possibly irrational, ratio).
std::vector<double> resample_to_length(std::span<const double> x, std::size_t out_len);

}  // namespace avf::audio
