// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/audio/resample.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "avf/error.hpp"

namespace avf::audio {

namespace {

constexpr int kMinInputRate = 8000;
constexpr std::int64_t kMaxCachedPhases = 4096;

class SincKernel {
 public:
  // `ratio` is out_rate / in_rate; the kernel is expressed in input samples.
  explicit SincKernel(double ratio)
      : cutoff_(SincFilterDesign::kRolloff * std::min(1.0, ratio)),
        half_width_(SincFilterDesign::kZeroCrossings / cutoff_),
        norm_(std::cyl_bessel_i(0.0, SincFilterDesign::kKaiserBeta)) {}

  double half_width() const { return half_width_; }

  double operator()(double x) const {
    const double r = x / half_width_;
    if (std::abs(r) >= 1.0) return 0.0;
    const double window =
        std::cyl_bessel_i(0.0, SincFilterDesign::kKaiserBeta * std::sqrt(1.0 - r * r)) / norm_;
    const double arg = std::numbers::pi * cutoff_ * x;
    const double sinc = x == 0.0 ? 1.0 : std::sin(arg) / arg;
    return cutoff_ * sinc * window;
  }

  // Taps for input indices base+first .. base+first+n-1 around fractional
  // position `frac` in [0, 1), normalized to unit sum.
  void taps(double frac, int first, std::vector<double>& out) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] = (*this)(frac - (first + static_cast<int>(j)));
      sum += out[j];
    }
    if (sum != 0.0) {
      for (double& t : out) t /= sum;
    }
  }

 private:
  double cutoff_;
  double half_width_;
  double norm_;
};

double apply(std::span<const double> x, std::int64_t base, int first,
             const std::vector<double>& taps) {
  double acc = 0.0;
  const auto n = static_cast<std::int64_t>(x.size());
  for (std::size_t j = 0; j < taps.size(); ++j) {
    const std::int64_t k = base + first + static_cast<std::int64_t>(j);
    if (k >= 0 && k < n) acc += taps[j] * x[static_cast<std::size_t>(k)];
  }
  return acc;
}

}  // namespace

Waveform downmix_to_mono(const Waveform& w) {
  if (w.channels == 1) return w;
  if (w.channels < 1) raise(ErrorCode::kInvalidArgument, "channel count must be positive");
  Waveform out;
  out.sample_rate_hz = w.sample_rate_hz;
  out.channels = 1;
  const std::size_t frames = w.frames();
  out.samples.resize(frames);
  const auto ch = static_cast<std::size_t>(w.channels);
  for (std::size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < ch; ++c) acc += w.samples[i * ch + c];
    out.samples[i] = acc / static_cast<double>(ch);
  }
  return out;
}

std::vector<double> resample(std::span<const double> x, int in_rate, int out_rate) {
  if (in_rate <= 0 || out_rate <= 0) {
    raise(ErrorCode::kUnsupportedRate, "sample rates must be positive");
  }
  if (in_rate == out_rate) return {x.begin(), x.end()};
  const std::int64_t g = std::gcd(in_rate, out_rate);
  const std::int64_t up = out_rate / g;    // L
  const std::int64_t down = in_rate / g;   // M
  const auto n_in = static_cast<std::int64_t>(x.size());
  const std::int64_t out_len = (n_in * out_rate + in_rate / 2) / in_rate;

  const SincKernel kernel(static_cast<double>(out_rate) / in_rate);
  const int reach = static_cast<int>(std::ceil(kernel.half_width()));
  const int first = -reach + 1;
  const std::size_t n_taps = static_cast<std::size_t>(2 * reach);

  std::vector<std::vector<double>> cache;
  if (up <= kMaxCachedPhases) {
    cache.resize(static_cast<std::size_t>(up), std::vector<double>(n_taps));
    for (std::int64_t p = 0; p < up; ++p) {
      kernel.taps(static_cast<double>(p) / up, first, cache[static_cast<std::size_t>(p)]);
    }
  }

  std::vector<double> y(static_cast<std::size_t>(out_len));
  std::vector<double> scratch(n_taps);
  for (std::int64_t n = 0; n < out_len; ++n) {
    const std::int64_t pos = n * down;
    const std::int64_t base = pos / up;
    const std::int64_t phase = pos % up;
    if (!cache.empty()) {
      y[static_cast<std::size_t>(n)] = apply(x, base, first, cache[static_cast<std::size_t>(phase)]);
    } else {
      kernel.taps(static_cast<double>(phase) / up, first, scratch);
      y[static_cast<std::size_t>(n)] = apply(x, base, first, scratch);
    }
  }
  return y;
}

std::vector<double> resample_to_length(std::span<const double> x, std::size_t out_len) {
  if (x.empty() || out_len == 0) return std::vector<double>(out_len, 0.0);
  if (out_len == x.size()) return {x.begin(), x.end()};
  const double step = static_cast<double>(x.size()) / static_cast<double>(out_len);
  const SincKernel kernel(1.0 / step);
  const int reach = static_cast<int>(std::ceil(kernel.half_width()));
  const int first = -reach + 1;
  std::vector<double> taps(static_cast<std::size_t>(2 * reach));
  std::vector<double> y(out_len);
  for (std::size_t n = 0; n < out_len; ++n) {
    const double t = static_cast<double>(n) * step;
    const double base = std::floor(t);
    kernel.taps(t - base, first, taps);
    y[n] = apply(x, static_cast<std::int64_t>(base), first, taps);
  }
  return y;
}

Waveform resample_to_16k_mono(const Waveform& w) {
  if (w.samples.empty()) raise(ErrorCode::kEmptyInput, "waveform has no samples");
  if (w.channels != 1 && w.channels != 2) {
    raise(ErrorCode::kInvalidArgument, "expected mono or stereo input");
  }
  if (w.sample_rate_hz < kMinInputRate) {
    raise(ErrorCode::kUnsupportedRate,
          "sample rate " + std::to_string(w.sample_rate_hz) + " Hz is below 8000 Hz");
  }
  Waveform mono = downmix_to_mono(w);
  if (mono.sample_rate_hz == kTargetSampleRate) return mono;
  Waveform out;
  out.channels = 1;
  out.sample_rate_hz = kTargetSampleRate;
  out.samples = resample(mono.samples, mono.sample_rate_hz, kTargetSampleRate);
  return out;
}

}  // namespace avf::audio
