// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/fusion/encoder.hpp"

#include <cmath>
#include <random>

#include "avf/error.hpp"
#include "avf/seed.hpp"

namespace avf::fusion {

namespace {

constexpr std::size_t kPatchSize =
    static_cast<std::size_t>(audio::kExampleFrames) * audio::kMelBands;
constexpr std::size_t kPooledSize =
    static_cast<std::size_t>(kToyVideoGrid) * kToyVideoGrid * video::kChannels;

Matrix random_projection(std::uint64_t seed, std::size_t rows, std::size_t cols) {
  if (rows == 0) raise(ErrorCode::kInvalidArgument, "encoder dim must be positive");
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(cols)));
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = normal(rng);
  }
  return m;
}

}  // namespace

Encoder Encoder::file_backed(data::EmbeddingStore store) {
  Encoder e;
  e.kind_ = EncoderKind::kFileBacked;
  e.modality_ = store.modality();
  e.dim_ = store.dim();
  e.store_ = std::make_shared<const data::EmbeddingStore>(std::move(store));
  return e;
}

Encoder Encoder::toy_audio(std::uint64_t seed, std::size_t dim) {
  Encoder e;
  e.kind_ = EncoderKind::kToy;
  e.modality_ = Modality::kAudio;
  e.dim_ = dim;
  e.projection_ = random_projection(seed, dim, kPatchSize);
  return e;
}

Encoder Encoder::toy_video(std::uint64_t seed, std::size_t dim) {
  Encoder e;
  e.kind_ = EncoderKind::kToy;
  e.modality_ = Modality::kVideo;
  e.dim_ = dim;
  e.projection_ = random_projection(seed, dim, kPooledSize);
  return e;
}

void Encoder::require(EncoderKind kind, Modality modality, const char* what) const {
  if (kind_ != kind || modality_ != modality) {
    raise(ErrorCode::kInvalidArgument, std::string("encoder does not support ") + what);
  }
}

std::vector<float> Encoder::embed(const std::string& clip_id) const {
  if (kind_ != EncoderKind::kFileBacked) {
    raise(ErrorCode::kInvalidArgument, "toy encoders need preprocessed input, not a clip id");
  }
  const auto v = store_->at(clip_id);
  return {v.begin(), v.end()};
}

std::vector<float> Encoder::project(std::span<const double> features) const {
  if (features.size() != projection_.cols()) {
    raise(ErrorCode::kShapeMismatch, "encoder input has the wrong size");
  }
  std::vector<float> out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    const auto row = projection_.row(r);
    double acc = 0.0;
    for (std::size_t c = 0; c < features.size(); ++c) acc += row[c] * features[c];
    out[r] = static_cast<float>(acc);
  }
  return out;
}

std::vector<float> Encoder::embed_example(const audio::MelExample& example) const {
  require(EncoderKind::kToy, Modality::kAudio, "log-mel examples");
  if (example.patch.rows() != static_cast<std::size_t>(audio::kExampleFrames) ||
      example.patch.cols() != static_cast<std::size_t>(audio::kMelBands)) {
    raise(ErrorCode::kShapeMismatch, "log-mel example must be 96 x 64");
  }
  return project(example.patch.data());
}

std::vector<float> Encoder::embed_clip(std::span<const audio::MelExample> examples) const {
  require(EncoderKind::kToy, Modality::kAudio, "log-mel examples");
  if (examples.empty()) raise(ErrorCode::kEmptyInput, "clip has no log-mel examples");
  std::vector<std::vector<float>> per_example;
  per_example.reserve(examples.size());
  for (const auto& ex : examples) per_example.push_back(embed_example(ex));
  return mean_embedding(per_example);
}

std::vector<float> Encoder::embed_clip(const video::FrameStack& stack) const {
  require(EncoderKind::kToy, Modality::kVideo, "frame stacks");
  return project(pool_frame_stack(stack));
}

std::vector<double> pool_frame_stack(const video::FrameStack& stack) {
  const int s = stack.size;
  if (stack.frames < 1 || s < kToyVideoGrid ||
      stack.values.size() != static_cast<std::size_t>(stack.frames) *
                                  video::FrameStack::frame_elements(s)) {
    raise(ErrorCode::kShapeMismatch, "frame stack too small for the pooling grid");
  }
  std::vector<double> pooled(kPooledSize, 0.0);
  for (int t = 0; t < stack.frames; ++t) {
    const auto frame = stack.frame(t);
    for (int gy = 0; gy < kToyVideoGrid; ++gy) {
      const int y0 = gy * s / kToyVideoGrid;
      const int y1 = (gy + 1) * s / kToyVideoGrid;
      for (int gx = 0; gx < kToyVideoGrid; ++gx) {
        const int x0 = gx * s / kToyVideoGrid;
        const int x1 = (gx + 1) * s / kToyVideoGrid;
        const double cell = static_cast<double>((y1 - y0) * (x1 - x0));
        double* out = &pooled[static_cast<std::size_t>((gy * kToyVideoGrid + gx) * video::kChannels)];
        for (int c = 0; c < video::kChannels; ++c) {
          double acc = 0.0;
          for (int y = y0; y < y1; ++y) {
            for (int x = x0; x < x1; ++x) {
              acc += frame[(static_cast<std::size_t>(y) * static_cast<std::size_t>(s) +
                            static_cast<std::size_t>(x)) * video::kChannels +
                           static_cast<std::size_t>(c)];
            }
          }
          out[c] += acc / cell;
        }
      }
    }
  }
  for (auto& v : pooled) v /= stack.frames;
  return pooled;
}

std::vector<float> mean_embedding(std::span<const std::vector<float>> embeddings) {
  if (embeddings.empty()) raise(ErrorCode::kEmptyInput, "nothing to average");
  const std::size_t dim = embeddings.front().size();
  std::vector<double> acc(dim, 0.0);
  for (const auto& e : embeddings) {
    if (e.size() != dim) raise(ErrorCode::kShapeMismatch, "embeddings differ in size");
    for (std::size_t k = 0; k < dim; ++k) acc[k] += e[k];
  }
  std::vector<float> out(dim);
  const auto n = static_cast<double>(embeddings.size());
  for (std::size_t k = 0; k < dim; ++k) out[k] = static_cast<float>(acc[k] / n);
  return out;
}

}  // namespace avf::fusion
