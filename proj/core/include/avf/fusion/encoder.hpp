// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "avf/audio/logmel.hpp"
#include "avf/data/embedding_store.hpp"
#include "avf/matrix.hpp"
#include "avf/video/image.hpp"

namespace avf::fusion {

using data::Modality;

inline constexpr std::size_t kAudioEmbeddingDim = 128;
inline constexpr std::size_t kVideoEmbeddingDim = 1024;
/// Spatial grid of the toy video encoder's pooling stage.
inline constexpr int kToyVideoGrid = 8;

enum class EncoderKind { kFileBacked, kToy };

/// Source of clip-level embeddings. File-backed encoders look vectors up by
/// clip id; toy encoders are fixed seeded random projections that stand in
/// for the pretrained networks.
class Encoder {
 public:
  static Encoder file_backed(data::EmbeddingStore store);
  /// Projection of a flattened 96x64 log-mel patch, entries N(0, 1/6144).
  static Encoder toy_audio(std::uint64_t seed, std::size_t dim = kAudioEmbeddingDim);
  /// 8x8 spatial mean pooling per channel, averaged over frames (192
  /// values), then a projection with entries N(0, 1/192).
  static Encoder toy_video(std::uint64_t seed, std::size_t dim = kVideoEmbeddingDim);

  Modality modality() const noexcept { return modality_; }
  EncoderKind kind() const noexcept { return kind_; }
  std::size_t output_dim() const noexcept { return dim_; }
  /// Toy encoders: the projection matrix (output_dim x input features).
  const Matrix& projection() const noexcept { return projection_; }

  /// File-backed lookup. Raises MissingEmbedding.
  std::vector<float> embed(const std::string& clip_id) const;
  /// Toy audio: one embedding per example.
  std::vector<float> embed_example(const audio::MelExample& example) const;
  /// Toy audio: mean of the example embeddings. Raises EmptyInput.
  std::vector<float> embed_clip(std::span<const audio::MelExample> examples) const;
  /// Toy video. Raises ShapeMismatch for frames smaller than the grid.
  std::vector<float> embed_clip(const video::FrameStack& stack) const;

 private:
  Encoder() = default;
  std::vector<float> project(std::span<const double> features) const;
  void require(EncoderKind kind, Modality modality, const char* what) const;

  Modality modality_ = Modality::kAudio;
  EncoderKind kind_ = EncoderKind::kToy;
  std::size_t dim_ = 0;
  Matrix projection_;
  std::shared_ptr<const data::EmbeddingStore> store_;
};

/// Per-channel means over an 8x8 grid of cells (cell bounds floor(i*S/8)),
/// averaged over all frames; channel-major within each cell.
std::vector<double> pool_frame_stack(const video::FrameStack& stack);

/// Element-wise mean of equally sized vectors. Raises EmptyInput.
std::vector<float> mean_embedding(std::span<const std::vector<float>> embeddings);

}  // namespace avf::fusion
