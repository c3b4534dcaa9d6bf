// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "avf/audio/fft.hpp"
#include "avf/audio/logmel.hpp"
#include "avf/audio/resample.hpp"
#include "avf/augment/ops.hpp"
#include "avf/error.hpp"

namespace avf::augment {

namespace ops {

namespace {

constexpr int kVocoderFft = 1024;
constexpr int kVocoderHop = 256;

double wrap_phase(double p) {
  return p - 2.0 * std::numbers::pi * std::round(p / (2.0 * std::numbers::pi));
}

}  // namespace

std::vector<double> time_stretch(std::span<const double> x, double factor) {
  if (!(factor > 0.0)) raise(ErrorCode::kInvalidArgument, "stretch factor must be positive");
  const auto n_in = x.size();
  const auto n_out = static_cast<std::size_t>(std::llround(static_cast<double>(n_in) * factor));
  if (n_in == 0) return std::vector<double>(n_out, 0.0);

  const std::size_t n_fft = kVocoderFft;
  const std::size_t hop = kVocoderHop;
  const std::size_t n_bins = n_fft / 2 + 1;
  const auto window = audio::periodic_hann(kVocoderFft);

  // Centered analysis frames over a zero-padded copy of the signal.
  std::vector<double> padded(n_in + n_fft, 0.0);
  std::copy(x.begin(), x.end(), padded.begin() + static_cast<std::ptrdiff_t>(n_fft / 2));
  const std::size_t n_frames = 1 + n_in / hop;

  audio::RealFft fft(kVocoderFft);
  std::vector<std::vector<std::complex<double>>> stft(
      n_frames + 1, std::vector<std::complex<double>>(n_bins));  // last column stays zero
  std::vector<double> frame(n_fft);
  for (std::size_t f = 0; f < n_frames; ++f) {
    for (std::size_t k = 0; k < n_fft; ++k) {
      const std::size_t i = f * hop + k;
      frame[k] = (i < padded.size() ? padded[i] : 0.0) * window[k];
    }
    fft.forward(frame, stft[f]);
  }

  // Resample the frame sequence at rate 1/factor, accumulating phase.
  const double rate = 1.0 / factor;
  std::vector<double> phase_acc(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) phase_acc[b] = std::arg(stft[0][b]);
  std::vector<std::vector<std::complex<double>>> stretched;
  for (double t = 0.0; t < static_cast<double>(n_frames); t += rate) {
    const auto i0 = static_cast<std::size_t>(t);
    const double alpha = t - static_cast<double>(i0);
    const auto& c0 = stft[i0];
    const auto& c1 = stft[i0 + 1];
    std::vector<std::complex<double>> col(n_bins);
    for (std::size_t b = 0; b < n_bins; ++b) {
      const double mag = (1.0 - alpha) * std::abs(c0[b]) + alpha * std::abs(c1[b]);
      col[b] = std::polar(mag, phase_acc[b]);
      const double advance = 2.0 * std::numbers::pi * static_cast<double>(b * hop) / n_fft;
      const double dphase = wrap_phase(std::arg(c1[b]) - std::arg(c0[b]) - advance);
      phase_acc[b] += advance + dphase;
    }
    stretched.push_back(std::move(col));
  }

  // Weighted overlap-add with squared-window normalization.
  const std::size_t total = n_fft + hop * (stretched.size() - 1);
  std::vector<double> y(total, 0.0), norm(total, 0.0), buf(n_fft);
  for (std::size_t f = 0; f < stretched.size(); ++f) {
    fft.inverse(stretched[f], buf);
    for (std::size_t k = 0; k < n_fft; ++k) {
      y[f * hop + k] += buf[k] / static_cast<double>(n_fft) * window[k];
      norm[f * hop + k] += window[k] * window[k];
    }
  }
  std::vector<double> out(n_out, 0.0);
  for (std::size_t i = 0; i < n_out; ++i) {
    const std::size_t j = i + n_fft / 2;
    if (j < total && norm[j] > 1e-8) out[i] = y[j] / norm[j];
  }
  return out;
}

std::vector<double> pitch_shift(std::span<const double> x, int sample_rate, double semitones) {
  (void)sample_rate;  // the shift is rate-independent
  if (semitones == 0.0 || x.empty()) return {x.begin(), x.end()};
  const double ratio = std::pow(2.0, semitones / 12.0);
  const auto stretched = time_stretch(x, ratio);
  return audio::resample_to_length(stretched, x.size());
}

std::vector<double> first_order_filter(std::span<const double> x, int sample_rate, int mode,
                                       double cutoff_hz) {
  if (!(cutoff_hz > 0.0 && cutoff_hz < sample_rate / 2.0)) {
    raise(ErrorCode::kParamOutOfRange, "filter cutoff must lie below Nyquist");
  }
  const double k = std::tan(std::numbers::pi * cutoff_hz / sample_rate);
  const double a1 = (k - 1.0) / (k + 1.0);
  double b0, b1;
  if (mode == 0) {
    b0 = b1 = k / (1.0 + k);
  } else {
    b0 = 1.0 / (1.0 + k);
    b1 = -b0;
  }
  std::vector<double> y(x.size());
  double x_prev = 0.0, y_prev = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    y[n] = b0 * x[n] + b1 * x_prev - a1 * y_prev;
    x_prev = x[n];
    y_prev = y[n];
  }
  return y;
}

}  // namespace ops

audio::Waveform augment_audio(const audio::Waveform& w, const AugmentationSpec& spec,
                              const OpRanges& ranges) {
  if (spec.modality != Modality::kAudio) {
    raise(ErrorCode::kInvalidArgument, "augment_audio needs an audio spec");
  }
  if (w.channels != 1) raise(ErrorCode::kInvalidArgument, "augment_audio expects mono audio");
  validate(spec, ranges);
  audio::Waveform out = w;
  auto& s = out.samples;
  for (std::size_t k = 0; k < spec.ops.size(); ++k) {
    const OpApplication& op = spec.ops[k];
    if (op.name == "pitch_shift") {
      s = ops::pitch_shift(s, out.sample_rate_hz, op.param("semitones"));
    } else if (op.name == "additive_noise") {
      double energy = 0.0;
      for (double v : s) energy += v * v;
      const double rms = s.empty() ? 0.0 : std::sqrt(energy / static_cast<double>(s.size()));
      const double sigma = rms / std::pow(10.0, op.param("snr_db") / 20.0);
      if (sigma > 0.0) {
        Rng rng(derive_seed(spec.seed, k));
        std::normal_distribution<double> noise(0.0, sigma);
        for (double& v : s) v += noise(rng);
      }
    } else if (op.name == "volume") {
      const double g = op.param("gain");
      for (double& v : s) v = std::clamp(v * g, -1.0, 1.0);
    } else if (op.name == "frequency_filter") {
      s = ops::first_order_filter(s, out.sample_rate_hz, static_cast<int>(op.param("mode")),
                                  op.param("cutoff_hz"));
    } else {
      raise(ErrorCode::kUnknownOp, "no audio implementation for op '" + op.name + "'");
    }
  }
  for (double& v : s) v = std::clamp(v, -1.0, 1.0);
  return out;
}

}  // namespace avf::augment
