// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "avf/audio/waveform.hpp"
#include "avf/matrix.hpp"

namespace avf::audio {

// Frontend constants. The exporter-side reference frontend uses the same
// values; changing any of them breaks embedding parity.
inline constexpr int kWindowLength = 400;   // 25 ms at 16 kHz
inline constexpr int kHopLength = 160;      // 10 ms at 16 kHz
inline constexpr int kFftSize = 512;
inline constexpr int kSpectrumBins = kFftSize / 2 + 1;
inline constexpr int kMelBands = 64;
inline constexpr double kMelLowHz = 125.0;
inline constexpr double kMelHighHz = 7500.0;
inline constexpr double kLogOffset = 0.01;
inline constexpr int kExampleFrames = 96;
inline constexpr double kExampleSeconds = kExampleFrames * kHopLength / double{kTargetSampleRate};

/// Magnitude STFT; frames are rows.
struct Spectrogram {
  Matrix frames;  // F x kSpectrumBins
  int window_len = kWindowLength;
  int hop_len = kHopLength;
  int fft_size = kFftSize;
};

struct MelExample {
  Matrix patch;  // kExampleFrames x kMelBands
  std::string source_clip_id;
  double start_time_s = 0.0;
};

/// floor((N - 400) / 160) + 1, or 0 when N < 400.
std::size_t stft_frame_count(std::size_t n_samples);
/// Number of whole 0.96 s examples a 16 kHz signal of N samples yields.
std::size_t example_count(std::size_t n_samples);

/// Periodic Hann window of length n: 0.5 - 0.5 cos(2 pi k / n).
std::vector<double> periodic_hann(int n);

/// 16 kHz mono in; 400-sample periodic-Hann frames hopped by 160, zero-padded
/// to 512 and transformed, keeping |X[k]| for k = 0..256.
Spectrogram stft_magnitude(const Waveform& w);

/// kMelBands x kSpectrumBins weights. Band edges are spaced uniformly on the
/// HTK mel scale between 125 and 7500 Hz and each triangle is linear in mel;
/// the DC bin carries no weight.
const Matrix& mel_weight_matrix();
double hz_to_mel(double hz);
double mel_to_hz(double mel);
/// Band center frequencies in Hz.
std::vector<double> mel_center_frequencies();

/// F x 64 mel energies: out[f][m] = sum_b weight[m][b] * spec[f][b].
Matrix mel_filterbank(const Spectrogram& spec);

/// ln(x + 0.01) elementwise.
Matrix log_compress(const Matrix& mel);

/// Non-overlapping 96-frame patches in temporal order; the trailing partial
/// patch is dropped.
std::vector<MelExample> frame_examples(const Matrix& logmel, const std::string& clip_id);

/// resample -> STFT -> mel -> log. Returns the F x 64 log-mel matrix.
Matrix compute_log_mel(const Waveform& w);

/// Full chain through frame_examples. Audio shorter than one example yields
/// an empty list instead of raising.
std::vector<MelExample> extract_examples(const Waveform& w, const std::string& clip_id);

}  // namespace avf::audio
