// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <concepts>
#include <numeric>
#include <span>
#include <vector>

#include "avf/error.hpp"
#include "avf/nn/adam.hpp"
#include "avf/nn/loss.hpp"
#include "avf/nn/mlp.hpp"

namespace avf::nn {

template <typename Input>
struct LabeledExample {
  Input input;
  int label = 0;
};

/// What train_epochs needs from a model: a cached forward pass producing
/// logits, a backward pass accumulating into parameter-shaped gradients, and
/// mutable parameter views.
template <typename M>
concept TrainableModel = requires(M& m, const M& cm, const typename M::Input& x,
                                  typename M::Cache& cache, Rng& rng,
                                  std::span<const typename M::Scalar> g,
                                  Gradients<typename M::Scalar>& grads) {
  { cm.forward(x, Mode::kTrain, &rng, &cache) } -> std::same_as<std::vector<typename M::Scalar>>;
  cm.backward(cache, g, grads);
  { m.parameters() } -> std::same_as<std::vector<std::span<typename M::Scalar>>>;
  m.touch();
};

struct EpochStats {
  double loss = 0.0;      // mean training-mode loss over the epoch
  double accuracy = 0.0;  // percent, training-mode predictions
};

/// Mini-batch Adam on mean categorical cross-entropy. Shuffling and dropout
/// draw from one generator seeded with cfg.seed, so a run is reproducible
/// bit for bit. The final batch of an epoch may be smaller.
template <TrainableModel M>
std::vector<EpochStats> train_epochs(M& model,
                                     std::span<const LabeledExample<typename M::Input>> data,
                                     const TrainingConfig& cfg) {
  using T = typename M::Scalar;
  validate(cfg);
  if (cfg.epochs == 0) return {};
  if (data.empty()) raise(ErrorCode::kEmptyDataset, "no training examples");

  Rng rng(cfg.seed);
  AdamState<T> adam;
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  typename M::Cache cache;
  std::vector<EpochStats> history;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    std::size_t correct = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      auto params = model.parameters();
      Gradients<T> grads = zeros_like(params);
      for (std::size_t i = start; i < end; ++i) {
        const auto& ex = data[order[i]];
        const auto logits = model.forward(ex.input, Mode::kTrain, &rng, &cache);
        const auto loss = softmax_ce_loss<T>(logits, static_cast<std::size_t>(ex.label));
        loss_sum += static_cast<double>(loss.loss);
        const int predicted = logits.size() > 1 && logits[1] > logits[0] ? 1 : 0;
        correct += predicted == ex.label;
        model.backward(cache, std::span<const T>(loss.grad_logits), grads);
      }
      const T scale = static_cast<T>(1.0 / static_cast<double>(end - start));
      for (auto& g : grads) {
        for (auto& v : g) v *= scale;
      }
      adam_step(params, grads, adam, cfg);
      model.touch();
    }
    const auto n = static_cast<double>(data.size());
    history.push_back({loss_sum / n, 100.0 * static_cast<double>(correct) / n});
  }
  return history;
}

/// Mlp adapter: Mlp::backward has a span-of-gradients signature.
template <typename T>
struct MlpModel {
  using Scalar = T;
  using Input = std::vector<T>;
  using Cache = typename Mlp<T>::Cache;

  Mlp<T> net;

  std::vector<T> forward(const Input& x, Mode mode, Rng* rng, Cache* cache) const {
    return net.forward(x, mode, rng, cache);
  }
  void backward(const Cache& cache, std::span<const T> g, Gradients<T>& grads) const {
    net.backward(cache, g, grads);
  }
  std::vector<std::span<T>> parameters() { return net.parameters(); }
  void touch() { net.touch(); }
};

}  // namespace avf::nn
