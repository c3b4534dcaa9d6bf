// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "avf/audio/fft.hpp"
#include "avf/audio/logmel.hpp"
#include "avf/error.hpp"

namespace avf::audio {

namespace {

// FFTW's planner is not thread-safe; executing existing plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct RealFft::Impl {
  int n;
  double* real;
  fftw_complex* spectrum;
  fftw_plan r2c;
  fftw_plan c2r;
};

RealFft::RealFft(int n) : impl_(std::make_unique<Impl>()) {
  if (n < 2) raise(ErrorCode::kInvalidArgument, "FFT size must be >= 2");
  impl_->n = n;
  impl_->real = fftw_alloc_real(static_cast<std::size_t>(n));
  impl_->spectrum = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
  std::lock_guard lock(planner_mutex());
  impl_->r2c = fftw_plan_dft_r2c_1d(n, impl_->real, impl_->spectrum, FFTW_ESTIMATE);
  impl_->c2r = fftw_plan_dft_c2r_1d(n, impl_->spectrum, impl_->real, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(impl_->r2c);
    fftw_destroy_plan(impl_->c2r);
  }
  fftw_free(impl_->real);
  fftw_free(impl_->spectrum);
}

int RealFft::size() const noexcept { return impl_->n; }

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) {
  const auto n = static_cast<std::size_t>(impl_->n);
  if (in.size() != n || out.size() != n / 2 + 1) {
    raise(ErrorCode::kShapeMismatch, "FFT buffer size mismatch");
  }
  std::copy(in.begin(), in.end(), impl_->real);
  fftw_execute(impl_->r2c);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = {impl_->spectrum[k][0], impl_->spectrum[k][1]};
  }
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) {
  const auto n = static_cast<std::size_t>(impl_->n);
  if (out.size() != n || in.size() != n / 2 + 1) {
    raise(ErrorCode::kShapeMismatch, "FFT buffer size mismatch");
  }
  for (std::size_t k = 0; k < in.size(); ++k) {
    impl_->spectrum[k][0] = in[k].real();
    impl_->spectrum[k][1] = in[k].imag();
  }
  fftw_execute(impl_->c2r);  // c2r destroys its input; it is rewritten every call
  std::copy(impl_->real, impl_->real + n, out.begin());
}

std::size_t stft_frame_count(std::size_t n_samples) {
  if (n_samples < static_cast<std::size_t>(kWindowLength)) return 0;
  return (n_samples - kWindowLength) / kHopLength + 1;
}

std::size_t example_count(std::size_t n_samples) {
  return stft_frame_count(n_samples) / kExampleFrames;
}

std::vector<double> periodic_hann(int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    w[static_cast<std::size_t>(k)] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * k / n);
  }
  return w;
}

Spectrogram stft_magnitude(const Waveform& w) {
  if (w.sample_rate_hz != kTargetSampleRate || w.channels != 1) {
    raise(ErrorCode::kUnsupportedRate, "STFT expects 16 kHz mono input");
  }
  const std::size_t n_frames = stft_frame_count(w.samples.size());
  if (n_frames == 0) {
    raise(ErrorCode::kTooShort, "need at least " + std::to_string(kWindowLength) +
                                    " samples, got " + std::to_string(w.samples.size()));
  }
  static const std::vector<double> window = periodic_hann(kWindowLength);

  Spectrogram spec;
  spec.frames = Matrix(n_frames, kSpectrumBins);
  RealFft fft(kFftSize);
  std::vector<double> frame(kFftSize, 0.0);
  std::vector<std::complex<double>> bins(kSpectrumBins);
  for (std::size_t f = 0; f < n_frames; ++f) {
    const double* src = w.samples.data() + f * kHopLength;
    for (int k = 0; k < kWindowLength; ++k) {
      frame[static_cast<std::size_t>(k)] = src[k] * window[static_cast<std::size_t>(k)];
    }
    fft.forward(frame, bins);
    auto row = spec.frames.row(f);
    for (std::size_t b = 0; b < bins.size(); ++b) row[b] = std::abs(bins[b]);
  }
  return spec;
}

}  // namespace avf::audio
