// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "avf/audio/logmel.hpp"
#include "avf/audio/resample.hpp"
#include "avf/error.hpp"

namespace avf::audio {

std::vector<MelExample> frame_examples(const Matrix& logmel, const std::string& clip_id) {
  if (logmel.cols() != static_cast<std::size_t>(kMelBands)) {
    raise(ErrorCode::kShapeMismatch, "log-mel matrix must have 64 columns");
  }
  const std::size_t n = logmel.rows() / kExampleFrames;
  if (n == 0) {
    raise(ErrorCode::kTooShort, "need at least 96 frames, got " +
                                    std::to_string(logmel.rows()));
  }
  std::vector<MelExample> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    MelExample ex;
    ex.patch = Matrix(kExampleFrames, kMelBands);
    const auto first = logmel.data().begin() +
                       static_cast<std::ptrdiff_t>(k * kExampleFrames * kMelBands);
    std::copy(first, first + kExampleFrames * kMelBands, ex.patch.data().begin());
    ex.source_clip_id = clip_id;
    ex.start_time_s = static_cast<double>(k) * kExampleSeconds;
    out.push_back(std::move(ex));
  }
  return out;
}

Matrix compute_log_mel(const Waveform& w) {
  return log_compress(mel_filterbank(stft_magnitude(resample_to_16k_mono(w))));
}

std::vector<MelExample> extract_examples(const Waveform& w, const std::string& clip_id) {
  const Waveform mono = resample_to_16k_mono(w);
  if (example_count(mono.samples.size()) == 0) return {};
  return frame_examples(log_compress(mel_filterbank(stft_magnitude(mono))), clip_id);
}

}  // namespace avf::audio
