// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avf/data/manifest.hpp"
#include "avf/nn/mlp.hpp"
#include "avf/seed.hpp"

namespace avf::fusion {

/// Declaration order is also the row order of comparison reports.
enum class Strategy : std::uint8_t {
  kHybrid = 0,
  kIntermediate = 1,
  kLate = 2,
  kVideoOnly = 3,
  kAudioOnly = 4,
};

inline constexpr std::array<Strategy, 5> kAllStrategies = {
    Strategy::kHybrid, Strategy::kIntermediate, Strategy::kLate, Strategy::kVideoOnly,
    Strategy::kAudioOnly};

std::string_view to_string(Strategy s);
/// Row label used in comparison tables.
std::string_view display_name(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view token);

bool uses_audio(Strategy s);
bool uses_video(Strategy s);

struct HeadConfig {
  Strategy strategy = Strategy::kHybrid;
  std::size_t audio_dim = 128;
  std::size_t video_dim = 1024;
  std::vector<std::size_t> intermediate_hidden = {256, 64};
  std::vector<std::size_t> branch_hidden = {64};
  std::vector<std::size_t> combiner_hidden = {16};
  std::vector<std::size_t> unimodal_hidden = {256, 64};
  double dropout = 0.5;

  friend bool operator==(const HeadConfig&, const HeadConfig&) = default;
};

void validate(const HeadConfig& cfg);

/// Sub-network roles, in parameter order:
///   intermediate: joint(concat(a, v))
///   late:         audio(a), video(v), combiner(concat(pA, pV))
///   hybrid:       audio(a), video(v), joint(concat(a, v)), combiner(concat(pA, pV, pJ))
///   audio-only:   audio(a);  video-only: video(v)
/// where pX = softmax of the branch's two logits.
enum class NetRole { kAudio, kVideo, kJoint, kCombiner };
std::vector<NetRole> net_roles(Strategy s);

template <typename T>
struct FusionInput {
  std::vector<T> audio;
  std::vector<T> video;
};

/// Two-class fusion classifier. forward() returns logits; the branches of
/// late and hybrid heads hand their softmax outputs to the combiner, and
/// training backpropagates through those softmaxes end to end.
template <typename T>
class FusionHead {
 public:
  using Scalar = T;
  using Input = FusionInput<T>;

  struct Cache {
    std::vector<typename nn::Mlp<T>::Cache> nets;
    /// Branch softmax outputs feeding the combiner (late/hybrid only).
    std::vector<std::vector<T>> branch_probs;
  };

  FusionHead() = default;
  explicit FusionHead(const HeadConfig& cfg);

  const HeadConfig& config() const noexcept { return cfg_; }
  Strategy strategy() const noexcept { return cfg_.strategy; }
  const std::vector<nn::Mlp<T>>& nets() const noexcept { return nets_; }
  std::vector<nn::Mlp<T>>& nets() noexcept { return nets_; }
  std::vector<NetRole> roles() const { return net_roles(cfg_.strategy); }

  void init(Rng& rng);
  std::vector<std::span<T>> parameters();
  std::size_t parameter_count() const;
  std::size_t tensor_count() const;
  void touch() noexcept;

  std::vector<T> forward(const Input& x, nn::Mode mode, Rng* rng, Cache* cache) const;
  /// Accumulates into grads (laid out like parameters()).
  void backward(const Cache& cache, std::span<const T> grad_logits, nn::Gradients<T>& grads) const;

  /// Eval-mode class probabilities.
  std::array<T, 2> probabilities(const Input& x) const;

 private:
  HeadConfig cfg_;
  std::vector<nn::Mlp<T>> nets_;
};

extern template class FusionHead<float>;
extern template class FusionHead<double>;

struct Prediction {
  std::string clip_id;
  std::array<double, 2> probabilities{0.5, 0.5};
  data::Label label = data::Label::kNonViolent;
};

/// argmax with exact ties going to NonViolent.
data::Label predicted_label(const std::array<double, 2>& probs);

template <typename T>
Prediction predict(const FusionHead<T>& head, const std::string& clip_id,
                   const FusionInput<T>& input) {
  const auto p = head.probabilities(input);
  Prediction out{clip_id, {static_cast<double>(p[0]), static_cast<double>(p[1])}, {}};
  out.label = predicted_label(out.probabilities);
  return out;
}

}  // namespace avf::fusion
