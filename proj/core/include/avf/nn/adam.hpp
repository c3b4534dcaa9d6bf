// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "avf/error.hpp"
#include "avf/nn/mlp.hpp"

namespace avf::nn {

struct TrainingConfig {
  double learning_rate = 1e-4;
  std::size_t batch_size = 7;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int epochs = 40;
  std::uint64_t seed = 0;
};

void validate(const TrainingConfig& cfg);

template <typename T>
struct AdamState {
  Gradients<T> m;
  Gradients<T> v;
  std::uint64_t t = 0;
};

/// One Adam update with bias correction:
///   m = b1 m + (1-b1) g;  v = b2 v + (1-b2) g^2
///   p -= lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
/// The state is lazily shaped on first use.
template <typename T>
void adam_step(const std::vector<std::span<T>>& params, const Gradients<T>& grads,
               AdamState<T>& state, const TrainingConfig& cfg) {
  if (grads.size() != params.size()) raise(ErrorCode::kShapeMismatch, "gradient count mismatch");
  if (state.m.empty()) {
    for (const auto& p : params) {
      state.m.emplace_back(p.size(), T{0});
      state.v.emplace_back(p.size(), T{0});
    }
  }
  if (state.m.size() != params.size()) raise(ErrorCode::kShapeMismatch, "Adam state mismatch");
  state.t += 1;
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
  for (std::size_t k = 0; k < params.size(); ++k) {
    auto p = params[k];
    const auto& g = grads[k];
    auto& m = state.m[k];
    auto& v = state.v[k];
    if (g.size() != p.size() || m.size() != p.size()) {
      raise(ErrorCode::kShapeMismatch, "parameter/gradient size mismatch");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double gi = g[i];
      const double mi = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * gi;
      const double vi = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * gi * gi;
      m[i] = static_cast<T>(mi);
      v[i] = static_cast<T>(vi);
      const double m_hat = mi / c1;
      const double v_hat = vi / c2;
      p[i] = static_cast<T>(p[i] - cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon));
    }
  }
}

}  // namespace avf::nn
