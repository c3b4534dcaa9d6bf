// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/nn/mlp.hpp"

#include <atomic>
#include <cmath>

#include "avf/error.hpp"

namespace avf::nn {

namespace {

// Eight independent partial sums: keeps the reduction order fixed while
// letting the compiler vectorize.
template <typename T>
T dot(const T* a, const T* b, std::size_t n) {
  T acc[8] = {};
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    for (std::size_t l = 0; l < 8; ++l) acc[l] += a[i + l] * b[i + l];
  }
  T tail = 0;
  for (; i < n; ++i) tail += a[i] * b[i];
  return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7])) + tail;
}

template <typename T>
void axpy(T alpha, const T* x, T* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

std::uint64_t next_version() noexcept {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

template <typename T>
Mlp<T>::Mlp(std::size_t input_dim, const std::vector<LayerSpec>& layers)
    : version_(next_version()) {
  if (input_dim == 0 || layers.empty()) {
    raise(ErrorCode::kShapeMismatch, "an MLP needs a positive input dim and a layer");
  }
  std::size_t in = input_dim;
  for (const auto& spec : layers) {
    if (spec.out == 0) raise(ErrorCode::kShapeMismatch, "layer width must be positive");
    if (!(spec.dropout_after >= 0.0 && spec.dropout_after < 1.0)) {
      raise(ErrorCode::kInvalidArgument, "dropout rate must lie in [0, 1)");
    }
    DenseLayer<T> layer;
    layer.in = in;
    layer.out = spec.out;
    layer.weights.assign(in * spec.out, T{0});
    layer.bias.assign(spec.out, T{0});
    layer.activation = spec.activation;
    layer.dropout_after = spec.dropout_after;
    layers_.push_back(std::move(layer));
    in = spec.out;
  }
}

template <typename T>
Mlp<T> Mlp<T>::classifier(std::size_t input_dim, const std::vector<std::size_t>& hidden,
                          std::size_t classes, double dropout) {
  std::vector<LayerSpec> specs;
  for (std::size_t w : hidden) specs.push_back({w, Activation::kRelu, dropout});
  specs.push_back({classes, Activation::kNone, 0.0});
  return Mlp(input_dim, specs);
}

template <typename T>
void Mlp<T>::init(Rng& rng) {
  for (auto& layer : layers_) {
    const double fan = layer.activation == Activation::kRelu
                           ? static_cast<double>(layer.in) / 2.0
                           : static_cast<double>(layer.in + layer.out) / 2.0;
    std::normal_distribution<double> dist(0.0, 1.0 / std::sqrt(fan));
    for (auto& w : layer.weights) w = static_cast<T>(dist(rng));
    std::fill(layer.bias.begin(), layer.bias.end(), T{0});
  }
  touch();
}

template <typename T>
std::size_t Mlp<T>::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.weights.size() + l.bias.size();
  return n;
}

template <typename T>
std::vector<std::span<T>> Mlp<T>::parameters() {
  std::vector<std::span<T>> out;
  for (auto& l : layers_) {
    out.emplace_back(l.weights);
    out.emplace_back(l.bias);
  }
  return out;
}

template <typename T>
std::vector<std::span<const T>> Mlp<T>::parameters() const {
  std::vector<std::span<const T>> out;
  for (const auto& l : layers_) {
    out.emplace_back(l.weights);
    out.emplace_back(l.bias);
  }
  return out;
}

template <typename T>
void Mlp<T>::touch() noexcept {
  version_ = next_version();
}

template <typename T>
std::vector<T> Mlp<T>::forward(std::span<const T> x, Mode mode, Rng* rng, Cache* cache) const {
  if (layers_.empty() || x.size() != input_dim()) {
    raise(ErrorCode::kShapeMismatch, "MLP input has dim " + std::to_string(x.size()) +
                                         ", expected " + std::to_string(input_dim()));
  }
  const bool train = mode == Mode::kTrain;
  if (train && rng == nullptr) raise(ErrorCode::kInvalidArgument, "training forward needs an rng");
  if (cache != nullptr) {
    cache->version = version_;
    cache->train = train;
    cache->inputs.assign(layers_.size(), {});
    cache->pre.assign(layers_.size(), {});
    cache->masks.assign(layers_.size(), {});
  }
  std::vector<T> h(x.begin(), x.end());
  for (std::size_t li = 0; li < layers_.size(); ++li) {
    const auto& layer = layers_[li];
    std::vector<T> z(layer.out);
    for (std::size_t o = 0; o < layer.out; ++o) {
      z[o] = dot(layer.weights.data() + o * layer.in, h.data(), layer.in) + layer.bias[o];
    }
    std::vector<T> a = z;
    if (layer.activation == Activation::kRelu) {
      for (auto& v : a) v = v > T{0} ? v : T{0};
    }
    std::vector<T> mask;
    if (train && layer.dropout_after > 0.0) {
      mask.resize(layer.out);
      std::bernoulli_distribution keep(1.0 - layer.dropout_after);
      const T scale = static_cast<T>(1.0 / (1.0 - layer.dropout_after));
      for (std::size_t o = 0; o < layer.out; ++o) {
        mask[o] = keep(*rng) ? scale : T{0};
        a[o] *= mask[o];
      }
    }
    if (cache != nullptr) {
      cache->inputs[li] = std::move(h);
      cache->pre[li] = std::move(z);
      cache->masks[li] = std::move(mask);
    }
    h = std::move(a);
  }
  return h;
}

template <typename T>
std::vector<T> Mlp<T>::backward(const Cache& cache, std::span<const T> grad_out,
                                std::span<std::vector<T>> grads) const {
  if (cache.version != version_ || cache.inputs.size() != layers_.size()) {
    raise(ErrorCode::kStaleCache, "forward cache does not match the current parameters");
  }
  if (grad_out.size() != output_dim() || grads.size() < tensor_count()) {
    raise(ErrorCode::kShapeMismatch, "backward gradient shapes do not match the network");
  }
  std::vector<T> g(grad_out.begin(), grad_out.end());
  for (std::size_t li = layers_.size(); li-- > 0;) {
    const auto& layer = layers_[li];
    const auto& mask = cache.masks[li];
    if (!mask.empty()) {
      for (std::size_t o = 0; o < layer.out; ++o) g[o] *= mask[o];
    }
    if (layer.activation == Activation::kRelu) {
      for (std::size_t o = 0; o < layer.out; ++o) {
        if (!(cache.pre[li][o] > T{0})) g[o] = T{0};
      }
    }
    auto& gw = grads[2 * li];
    auto& gb = grads[2 * li + 1];
    const auto& input = cache.inputs[li];
    std::vector<T> g_in(layer.in, T{0});
    for (std::size_t o = 0; o < layer.out; ++o) {
      if (g[o] == T{0}) continue;
      gb[o] += g[o];
      axpy(g[o], input.data(), gw.data() + o * layer.in, layer.in);
      axpy(g[o], layer.weights.data() + o * layer.in, g_in.data(), layer.in);
    }
    g = std::move(g_in);
  }
  return g;
}

template class Mlp<float>;
template class Mlp<double>;

}  // namespace avf::nn
