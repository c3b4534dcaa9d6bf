// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "avf/seed.hpp"

namespace avf::nn {

enum class Activation : std::uint8_t { kNone = 0, kRelu = 1 };
enum class Mode { kTrain, kEval };

/// Per-parameter-tensor gradients, laid out like Model::parameters().
template <typename T>
using Gradients = std::vector<std::vector<T>>;

template <typename T>
struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<T> weights;  // out x in, row-major
  std::vector<T> bias;     // out
  Activation activation = Activation::kNone;
  /// Inverted-dropout rate applied to this layer's output in training mode.
  double dropout_after = 0.0;
};

struct LayerSpec {
  std::size_t out = 0;
  Activation activation = Activation::kNone;
  double dropout_after = 0.0;
};

/// Multi-layer perceptron: dense -> activation -> (dropout) per layer.
template <typename T>
class Mlp {
 public:
  using Scalar = T;
  using Input = std::vector<T>;

  /// Everything backward() needs from one forward pass.
  struct Cache {
    std::uint64_t version = 0;
    bool train = false;
    std::vector<std::vector<T>> inputs;  // input to each layer
    std::vector<std::vector<T>> pre;     // pre-activations
    std::vector<std::vector<T>> masks;   // 0 or 1/(1-rate); empty when unused
  };

  Mlp() = default;
  Mlp(std::size_t input_dim, const std::vector<LayerSpec>& layers);

  /// ReLU hidden layers each followed by dropout `dropout`, then a linear
  /// output layer of `classes` logits.
  static Mlp classifier(std::size_t input_dim, const std::vector<std::size_t>& hidden,
                        std::size_t classes, double dropout);

  /// He-normal weights for ReLU layers, Glorot-normal for linear layers,
  /// zero biases.
  void init(Rng& rng);

  std::size_t input_dim() const noexcept { return layers_.empty() ? 0 : layers_.front().in; }
  std::size_t output_dim() const noexcept { return layers_.empty() ? 0 : layers_.back().out; }
  const std::vector<DenseLayer<T>>& layers() const noexcept { return layers_; }
  std::vector<DenseLayer<T>>& layers() noexcept { return layers_; }
  std::size_t parameter_count() const;

  /// weights_0, bias_0, weights_1, bias_1, ...
  std::vector<std::span<T>> parameters();
  std::vector<std::span<const T>> parameters() const;
  std::size_t tensor_count() const noexcept { return 2 * layers_.size(); }

  /// Marks parameters as changed; caches taken earlier become stale.
  void touch() noexcept;
  std::uint64_t version() const noexcept { return version_; }

  /// Train mode draws dropout masks from `rng` (required); Eval mode consumes
  /// no randomness. `cache` may be null when no backward pass follows.
  std::vector<T> forward(std::span<const T> x, Mode mode, Rng* rng, Cache* cache) const;

  /// Accumulates (+=) parameter gradients into grads[0 .. tensor_count()) and
  /// returns dLoss/dInput.
  std::vector<T> backward(const Cache& cache, std::span<const T> grad_out,
                          std::span<std::vector<T>> grads) const;

 private:
  std::vector<DenseLayer<T>> layers_;
  std::uint64_t version_ = 0;
};

extern template class Mlp<float>;
extern template class Mlp<double>;

/// Zero gradients shaped like `params`.
template <typename T>
Gradients<T> zeros_like(const std::vector<std::span<T>>& params) {
  Gradients<T> g;
  g.reserve(params.size());
  for (const auto& p : params) g.emplace_back(p.size(), T{0});
  return g;
}

/// Unique, process-wide version stamp.
std::uint64_t next_version() noexcept;

}  // namespace avf::nn
