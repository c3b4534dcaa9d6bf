// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference implementations used by unit and acceptance tests.
// None of these call into the library code they check.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "avf/fusion/head.hpp"
#include "avf/matrix.hpp"
#include "avf/nn/loss.hpp"

namespace avf::oracle {

inline constexpr int kRate = 16000;
inline constexpr int kWin = 400;
inline constexpr int kHop = 160;
inline constexpr int kNfft = 512;
inline constexpr int kBins = 257;
inline constexpr int kBands = 64;

inline std::size_t frame_count(std::size_t n) {
  return n < static_cast<std::size_t>(kWin) ? 0 : (n - kWin) / kHop + 1;
}

/// |X[k]| for k in [0, 257) of one 400-sample frame, Hann-windowed and
/// zero-padded to 512, by direct summation.
inline std::vector<double> dft_magnitude(const double* frame) {
  static const auto tables = [] {
    std::vector<double> c(kNfft), s(kNfft);
    for (int j = 0; j < kNfft; ++j) {
      c[j] = std::cos(2.0 * std::numbers::pi * j / kNfft);
      s[j] = std::sin(2.0 * std::numbers::pi * j / kNfft);
    }
    return std::pair{c, s};
  }();
  std::vector<double> windowed(kWin);
  for (int n = 0; n < kWin; ++n) {
    windowed[n] = frame[n] * (0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / kWin));
  }
  std::vector<double> mag(kBins);
  for (int k = 0; k < kBins; ++k) {
    double re = 0.0, im = 0.0;
    for (int n = 0; n < kWin; ++n) {
      const int j = (n * k) % kNfft;
      re += windowed[n] * tables.first[j];
      im -= windowed[n] * tables.second[j];
    }
    mag[k] = std::hypot(re, im);
  }
  return mag;
}

inline double mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

/// 64 triangles with vertices equally spaced on the mel scale between 125
/// and 7500 Hz, evaluated at each bin's mel value; the DC bin has no weight.
inline Matrix mel_filters() {
  Matrix w(kBands, kBins);
  const double lo = mel(125.0);
  const double hi = mel(7500.0);
  const double step = (hi - lo) / (kBands + 1);
  for (int m = 0; m < kBands; ++m) {
    const double left = lo + m * step;
    const double mid = left + step;
    const double right = mid + step;
    for (int k = 1; k < kBins; ++k) {
      const double x = mel(k * (kRate / 2.0) / (kBins - 1));
      double v = 0.0;
      if (x > left && x <= mid) v = (x - left) / (mid - left);
      if (x > mid && x < right) v = (right - x) / (right - mid);
      w(m, k) = v;
    }
  }
  return w;
}

/// Full log-mel chain on 16 kHz mono samples: F x 64.
inline Matrix log_mel(const std::vector<double>& x) {
  static const Matrix filters = mel_filters();
  const std::size_t frames = frame_count(x.size());
  Matrix out(frames, kBands);
  for (std::size_t f = 0; f < frames; ++f) {
    const auto mag = dft_magnitude(x.data() + f * kHop);
    for (int m = 0; m < kBands; ++m) {
      double e = 0.0;
      for (int k = 0; k < kBins; ++k) e += filters(m, k) * mag[k];
      out(f, m) = std::log(e + 0.01);
    }
  }
  return out;
}

/// Norm-wise relative error ||a - n|| / max(||a||, ||n||); 0 when both vanish.
inline double relative_error(const std::vector<double>& a, const std::vector<double>& n) {
  double diff = 0.0, na = 0.0, nn = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - n[i]) * (a[i] - n[i]);
    na += a[i] * a[i];
    nn += n[i] * n[i];
  }
  const double scale = std::sqrt(std::max(na, nn));
  return scale == 0.0 ? 0.0 : std::sqrt(diff) / scale;
}

struct GradCheck {
  std::vector<double> analytic;
  std::vector<double> numeric;
  double error = 0.0;
};

/// Training-mode cross-entropy of `model` on (x, label) with dropout masks
/// frozen by reseeding the generator before every forward pass.
template <typename Model>
double frozen_loss(const Model& model, const typename Model::Input& x, int label,
                   std::uint64_t mask_seed) {
  Rng rng(mask_seed);
  const auto logits = model.forward(x, nn::Mode::kTrain, &rng, nullptr);
  return nn::softmax_ce_loss<double>(logits, static_cast<std::size_t>(label)).loss;
}

/// Analytic gradients of every parameter against central differences.
template <typename Model>
GradCheck check_gradients(Model& model, const typename Model::Input& x, int label,
                          std::uint64_t mask_seed, double h = 1e-6) {
  GradCheck out;
  {
    Rng rng(mask_seed);
    typename Model::Cache cache;
    const auto logits = model.forward(x, nn::Mode::kTrain, &rng, &cache);
    const auto loss = nn::softmax_ce_loss<double>(logits, static_cast<std::size_t>(label));
    auto params = model.parameters();
    nn::Gradients<double> grads = nn::zeros_like(params);
    model.backward(cache, std::span<const double>(loss.grad_logits), grads);
    for (const auto& g : grads) out.analytic.insert(out.analytic.end(), g.begin(), g.end());
  }
  for (auto p : model.parameters()) {
    for (auto& v : p) {
      const double saved = v;
      v = saved + h;
      const double up = frozen_loss(model, x, label, mask_seed);
      v = saved - h;
      const double down = frozen_loss(model, x, label, mask_seed);
      v = saved;
      out.numeric.push_back((up - down) / (2.0 * h));
    }
  }
  model.touch();
  out.error = relative_error(out.analytic, out.numeric);
  return out;
}

/// A random small fusion head with random inputs, in fp64.
struct RandomHead {
  fusion::FusionHead<double> head;
  fusion::FusionInput<double> input;
  int label = 0;
};

inline RandomHead random_head(fusion::Strategy strategy, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto dim = [&](int lo, int hi) {
    return static_cast<std::size_t>(std::uniform_int_distribution<int>(lo, hi)(rng));
  };
  auto widths = [&](int max_layers) {
    std::vector<std::size_t> w(dim(1, max_layers));
    for (auto& x : w) x = dim(2, 12);
    return w;
  };
  fusion::HeadConfig cfg;
  cfg.strategy = strategy;
  cfg.audio_dim = dim(2, 10);
  cfg.video_dim = dim(2, 16);
  cfg.intermediate_hidden = widths(2);
  cfg.branch_hidden = widths(2);
  cfg.combiner_hidden = widths(1);
  cfg.unimodal_hidden = widths(2);
  cfg.dropout = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
  RandomHead out{fusion::FusionHead<double>(cfg), {}, 0};
  out.head.init(rng);
  // Nonzero biases so the check also covers them away from the init point.
  std::normal_distribution<double> normal(0.0, 0.3);
  for (auto& net : out.head.nets()) {
    for (auto& layer : net.layers()) {
      for (auto& b : layer.bias) b = normal(rng);
    }
  }
  out.head.touch();
  std::normal_distribution<double> unit;
  out.input.audio.resize(cfg.audio_dim);
  out.input.video.resize(cfg.video_dim);
  for (auto& v : out.input.audio) v = unit(rng);
  for (auto& v : out.input.video) v = unit(rng);
  out.label = static_cast<int>(rng() % 2);
  return out;
}

}  // namespace avf::oracle
