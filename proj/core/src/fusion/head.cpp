// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/fusion/head.hpp"

#include "avf/error.hpp"
#include "avf/nn/loss.hpp"

namespace avf::fusion {

namespace {

constexpr std::size_t kClasses = 2;

struct StrategyName {
  Strategy strategy;
  std::string_view token;
  std::string_view display;
};

constexpr std::array<StrategyName, 5> kNames = {{
    {Strategy::kHybrid, "hybrid", "Hybrid fusion"},
    {Strategy::kIntermediate, "intermediate", "Intermediate fusion"},
    {Strategy::kLate, "late", "Late fusion"},
    {Strategy::kVideoOnly, "video_only", "Video only"},
    {Strategy::kAudioOnly, "audio_only", "Audio only"},
}};

template <typename T>
std::vector<T> concat(std::initializer_list<std::span<const T>> parts) {
  std::vector<T> out;
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

void check_dims(const HeadConfig& cfg, std::size_t audio, std::size_t video) {
  if (uses_audio(cfg.strategy) && audio != cfg.audio_dim) {
    raise(ErrorCode::kShapeMismatch, "audio embedding has dim " + std::to_string(audio) +
                                         ", head expects " + std::to_string(cfg.audio_dim));
  }
  if (uses_video(cfg.strategy) && video != cfg.video_dim) {
    raise(ErrorCode::kShapeMismatch, "video embedding has dim " + std::to_string(video) +
                                         ", head expects " + std::to_string(cfg.video_dim));
  }
}

}  // namespace

std::string_view to_string(Strategy s) {
  for (const auto& n : kNames) {
    if (n.strategy == s) return n.token;
  }
  return "unknown";
}

std::string_view display_name(Strategy s) {
  for (const auto& n : kNames) {
    if (n.strategy == s) return n.display;
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view token) {
  for (const auto& n : kNames) {
    if (n.token == token) return n.strategy;
  }
  return std::nullopt;
}

bool uses_audio(Strategy s) { return s != Strategy::kVideoOnly; }
bool uses_video(Strategy s) { return s != Strategy::kAudioOnly; }

void validate(const HeadConfig& cfg) {
  if (cfg.audio_dim == 0 || cfg.video_dim == 0) {
    raise(ErrorCode::kInvalidArgument, "embedding dims must be positive");
  }
  if (!(cfg.dropout >= 0.0 && cfg.dropout < 1.0)) {
    raise(ErrorCode::kInvalidArgument, "dropout must lie in [0, 1)");
  }
  for (const auto* widths : {&cfg.intermediate_hidden, &cfg.branch_hidden, &cfg.combiner_hidden,
                             &cfg.unimodal_hidden}) {
    for (auto w : *widths) {
      if (w == 0) raise(ErrorCode::kInvalidArgument, "hidden widths must be positive");
    }
  }
}

std::vector<NetRole> net_roles(Strategy s) {
  switch (s) {
    case Strategy::kIntermediate: return {NetRole::kJoint};
    case Strategy::kLate: return {NetRole::kAudio, NetRole::kVideo, NetRole::kCombiner};
    case Strategy::kHybrid:
      return {NetRole::kAudio, NetRole::kVideo, NetRole::kJoint, NetRole::kCombiner};
    case Strategy::kAudioOnly: return {NetRole::kAudio};
    case Strategy::kVideoOnly: return {NetRole::kVideo};
  }
  return {};
}

data::Label predicted_label(const std::array<double, 2>& probs) {
  return probs[1] > probs[0] ? data::Label::kViolent : data::Label::kNonViolent;
}

template <typename T>
FusionHead<T>::FusionHead(const HeadConfig& cfg) : cfg_(cfg) {
  validate(cfg_);
  const bool unimodal =
      cfg_.strategy == Strategy::kAudioOnly || cfg_.strategy == Strategy::kVideoOnly;
  const auto& branch = unimodal ? cfg_.unimodal_hidden : cfg_.branch_hidden;
  const auto roles = net_roles(cfg_.strategy);
  for (auto role : roles) {
    switch (role) {
      case NetRole::kAudio:
        nets_.push_back(nn::Mlp<T>::classifier(cfg_.audio_dim, branch, kClasses, cfg_.dropout));
        break;
      case NetRole::kVideo:
        nets_.push_back(nn::Mlp<T>::classifier(cfg_.video_dim, branch, kClasses, cfg_.dropout));
        break;
      case NetRole::kJoint:
        nets_.push_back(nn::Mlp<T>::classifier(cfg_.audio_dim + cfg_.video_dim,
                                               cfg_.intermediate_hidden, kClasses, cfg_.dropout));
        break;
      case NetRole::kCombiner:
        nets_.push_back(nn::Mlp<T>::classifier(kClasses * (roles.size() - 1),
                                               cfg_.combiner_hidden, kClasses, cfg_.dropout));
        break;
    }
  }
}

template <typename T>
void FusionHead<T>::init(Rng& rng) {
  for (auto& n : nets_) n.init(rng);
}

template <typename T>
std::vector<std::span<T>> FusionHead<T>::parameters() {
  std::vector<std::span<T>> out;
  for (auto& n : nets_) {
    auto p = n.parameters();
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

template <typename T>
std::size_t FusionHead<T>::parameter_count() const {
  std::size_t total = 0;
  for (const auto& n : nets_) total += n.parameter_count();
  return total;
}

template <typename T>
std::size_t FusionHead<T>::tensor_count() const {
  std::size_t total = 0;
  for (const auto& n : nets_) total += n.tensor_count();
  return total;
}

template <typename T>
void FusionHead<T>::touch() noexcept {
  for (auto& n : nets_) n.touch();
}

template <typename T>
std::vector<T> FusionHead<T>::forward(const Input& x, nn::Mode mode, Rng* rng,
                                      Cache* cache) const {
  if (nets_.empty()) raise(ErrorCode::kInvalidArgument, "fusion head is not built");
  check_dims(cfg_, x.audio.size(), x.video.size());
  const auto roles = net_roles(cfg_.strategy);
  if (cache != nullptr) {
    cache->nets.assign(nets_.size(), {});
    cache->branch_probs.clear();
  }
  auto net_cache = [&](std::size_t k) { return cache ? &cache->nets[k] : nullptr; };

  const std::span<const T> a(x.audio);
  const std::span<const T> v(x.video);
  std::vector<T> combiner_in;
  for (std::size_t k = 0; k < nets_.size(); ++k) {
    std::vector<T> logits;
    switch (roles[k]) {
      case NetRole::kAudio: logits = nets_[k].forward(a, mode, rng, net_cache(k)); break;
      case NetRole::kVideo: logits = nets_[k].forward(v, mode, rng, net_cache(k)); break;
      case NetRole::kJoint:
        logits = nets_[k].forward(concat<T>({a, v}), mode, rng, net_cache(k));
        break;
      case NetRole::kCombiner: return nets_[k].forward(combiner_in, mode, rng, net_cache(k));
    }
    if (nets_.size() == 1) return logits;
    auto p = nn::softmax<T>(logits);
    combiner_in.insert(combiner_in.end(), p.begin(), p.end());
    if (cache != nullptr) cache->branch_probs.push_back(std::move(p));
  }
  raise(ErrorCode::kInvalidArgument, "fusion head has no combiner");
}

template <typename T>
void FusionHead<T>::backward(const Cache& cache, std::span<const T> grad_logits,
                             nn::Gradients<T>& grads) const {
  if (cache.nets.size() != nets_.size()) raise(ErrorCode::kStaleCache, "cache from another head");
  if (grads.size() != tensor_count()) raise(ErrorCode::kShapeMismatch, "gradient count mismatch");
  std::vector<std::size_t> offset(nets_.size(), 0);
  for (std::size_t k = 1; k < nets_.size(); ++k) {
    offset[k] = offset[k - 1] + nets_[k - 1].tensor_count();
  }
  auto slot = [&](std::size_t k) {
    return std::span<std::vector<T>>(grads).subspan(offset[k], nets_[k].tensor_count());
  };

  if (nets_.size() == 1) {
    nets_[0].backward(cache.nets[0], grad_logits, slot(0));
    return;
  }
  const std::size_t c = nets_.size() - 1;
  const auto grad_in = nets_[c].backward(cache.nets[c], grad_logits, slot(c));
  for (std::size_t k = 0; k < c; ++k) {
    const auto& p = cache.branch_probs[k];
    const std::span<const T> g_p(grad_in.data() + k * kClasses, kClasses);
    const auto g_logits = nn::softmax_backward<T>(p, g_p);
    nets_[k].backward(cache.nets[k], g_logits, slot(k));
  }
}

template <typename T>
std::array<T, 2> FusionHead<T>::probabilities(const Input& x) const {
  const auto logits = forward(x, nn::Mode::kEval, nullptr, nullptr);
  const auto p = nn::softmax<T>(logits);
  return {p[0], p[1]};
}

template class FusionHead<float>;
template class FusionHead<double>;

}  // namespace avf::fusion
