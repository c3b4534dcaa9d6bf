// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "avf/audio/logmel.hpp"
#include "avf/error.hpp"

namespace avf::audio {

namespace {

std::vector<double> band_edges_mel() {
  const double lo = hz_to_mel(kMelLowHz);
  const double hi = hz_to_mel(kMelHighHz);
  std::vector<double> edges(kMelBands + 2);
  for (int i = 0; i < kMelBands + 2; ++i) {
    edges[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (kMelBands + 1);
  }
  return edges;
}

Matrix build_weights() {
  const auto edges = band_edges_mel();
  const double nyquist = kTargetSampleRate / 2.0;
  Matrix weights(kMelBands, kSpectrumBins);
  for (int b = 1; b < kSpectrumBins; ++b) {
    const double bin_mel = hz_to_mel(nyquist * b / (kSpectrumBins - 1));
    for (int m = 0; m < kMelBands; ++m) {
      const double lower = edges[static_cast<std::size_t>(m)];
      const double center = edges[static_cast<std::size_t>(m) + 1];
      const double upper = edges[static_cast<std::size_t>(m) + 2];
      const double rising = (bin_mel - lower) / (center - lower);
      const double falling = (upper - bin_mel) / (upper - center);
      weights(static_cast<std::size_t>(m), static_cast<std::size_t>(b)) =
          std::max(0.0, std::min(rising, falling));
    }
  }
  return weights;
}

}  // namespace

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

std::vector<double> mel_center_frequencies() {
  const auto edges = band_edges_mel();
  std::vector<double> centers(kMelBands);
  for (int m = 0; m < kMelBands; ++m) {
    centers[static_cast<std::size_t>(m)] = mel_to_hz(edges[static_cast<std::size_t>(m) + 1]);
  }
  return centers;
}

const Matrix& mel_weight_matrix() {
  static const Matrix weights = build_weights();
  return weights;
}

Matrix mel_filterbank(const Spectrogram& spec) {
  if (spec.frames.cols() != static_cast<std::size_t>(kSpectrumBins) ||
      spec.fft_size != kFftSize) {
    raise(ErrorCode::kShapeMismatch, "mel filterbank expects " +
                                         std::to_string(kSpectrumBins) + " bins, got " +
                                         std::to_string(spec.frames.cols()));
  }
  const Matrix& weights = mel_weight_matrix();
  Matrix out(spec.frames.rows(), kMelBands);
  for (std::size_t f = 0; f < spec.frames.rows(); ++f) {
    const auto in = spec.frames.row(f);
    auto dst = out.row(f);
    for (std::size_t m = 0; m < static_cast<std::size_t>(kMelBands); ++m) {
      const auto w = weights.row(m);
      double acc = 0.0;
      for (std::size_t b = 0; b < in.size(); ++b) acc += w[b] * in[b];
      dst[m] = acc;
    }
  }
  return out;
}

Matrix log_compress(const Matrix& mel) {
  Matrix out(mel.rows(), mel.cols());
  const auto& src = mel.data();
  auto& dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (!(src[i] >= 0.0)) {
      raise(ErrorCode::kNegativeInput, "log_compress input must be non-negative");
    }
    dst[i] = std::log(src[i] + kLogOffset);
  }
  return out;
}

}  // namespace avf::audio
