// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace avf::video {

inline constexpr int kChannels = 3;

/// Interleaved RGB image, row-major (H x W x 3).
template <typename T>
struct Image {
  int height = 0;
  int width = 0;
  std::vector<T> pixels;

  Image() = default;
  Image(int h, int w, T fill = T{})
      : height(h), width(w),
        pixels(static_cast<std::size_t>(h) * static_cast<std::size_t>(w) * kChannels, fill) {}

  std::size_t offset(int y, int x) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
            static_cast<std::size_t>(x)) * kChannels;
  }
  T& at(int y, int x, int c) { return pixels[offset(y, x) + static_cast<std::size_t>(c)]; }
  const T& at(int y, int x, int c) const {
    return pixels[offset(y, x) + static_cast<std::size_t>(c)];
  }

  friend bool operator==(const Image&, const Image&) = default;
};

using ImageU8 = Image<std::uint8_t>;
using ImageF = Image<float>;

struct RawFrameSequence {
  std::vector<ImageU8> frames;
  double fps = 25.0;
  std::string clip_id;
};

/// T x size x size x 3 floats in [0, 1].
struct FrameStack {
  std::string clip_id;
  int frames = 0;
  int size = 0;
  std::vector<float> values;

  FrameStack() = default;
  FrameStack(std::string id, int t, int s)
      : clip_id(std::move(id)), frames(t), size(s),
        values(static_cast<std::size_t>(t) * frame_elements(s), 0.0f) {}

  static std::size_t frame_elements(int s) {
    return static_cast<std::size_t>(s) * static_cast<std::size_t>(s) * kChannels;
  }
  std::span<float> frame(int t) {
    return {values.data() + static_cast<std::size_t>(t) * frame_elements(size),
            frame_elements(size)};
  }
  std::span<const float> frame(int t) const {
    return {values.data() + static_cast<std::size_t>(t) * frame_elements(size),
            frame_elements(size)};
  }

  friend bool operator==(const FrameStack&, const FrameStack&) = default;
};

}  // namespace avf::video
