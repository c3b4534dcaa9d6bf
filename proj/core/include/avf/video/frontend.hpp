// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <type_traits>
#include <vector>

#include "avf/error.hpp"
#include "avf/video/image.hpp"

namespace avf::video {

inline constexpr int kFrameSize = 224;
inline constexpr int kDefaultClipFrames = 32;

/// S = min(H, W) window at offsets (floor((W-S)/2), floor((H-S)/2)).
template <typename T>
Image<T> center_square_crop(const Image<T>& f) {
  if (f.height < 1 || f.width < 1) raise(ErrorCode::kShapeMismatch, "empty image");
  const int s = std::min(f.height, f.width);
  const int ox = (f.width - s) / 2;
  const int oy = (f.height - s) / 2;
  Image<T> out(s, s);
  for (int y = 0; y < s; ++y) {
    const auto* src = f.pixels.data() + f.offset(y + oy, ox);
    std::copy(src, src + static_cast<std::ptrdiff_t>(s) * kChannels,
              out.pixels.data() + out.offset(y, 0));
  }
  return out;
}

namespace detail {

/// Source taps for one output coordinate under the half-pixel-center
/// convention: src = (dst + 0.5) * in / out - 0.5, clamped to the image.
/// Positions are kept as exact rationals over 2*out so that mirrored output
/// coordinates get mirrored taps with swapped, bit-identical weights.
struct Taps {
  int i0, i1;
  double w0, w1;
};

std::vector<Taps> bilinear_taps(int in_size, int out_size);

}  // namespace detail

/// Bilinear resize of a square image to out_size x out_size. 8-bit output is
/// rounded half up.
template <typename T>
Image<T> resize_square(const Image<T>& f, int out_size) {
  if (f.height != f.width) raise(ErrorCode::kShapeMismatch, "resize expects a square image");
  if (f.height == out_size) return f;
  const auto taps = detail::bilinear_taps(f.height, out_size);
  Image<T> out(out_size, out_size);
  for (int y = 0; y < out_size; ++y) {
    const auto& ty = taps[static_cast<std::size_t>(y)];
    for (int x = 0; x < out_size; ++x) {
      const auto& tx = taps[static_cast<std::size_t>(x)];
      for (int c = 0; c < kChannels; ++c) {
        const double top = tx.w0 * f.at(ty.i0, tx.i0, c) + tx.w1 * f.at(ty.i0, tx.i1, c);
        const double bottom = tx.w0 * f.at(ty.i1, tx.i0, c) + tx.w1 * f.at(ty.i1, tx.i1, c);
        const double v = ty.w0 * top + ty.w1 * bottom;
        if constexpr (std::is_integral_v<T>) {
          out.at(y, x, c) = static_cast<T>(std::floor(v + 0.5));
        } else {
          out.at(y, x, c) = static_cast<T>(v);
        }
      }
    }
  }
  return out;
}

template <typename T>
Image<T> resize_224(const Image<T>& f) {
  return resize_square(f, kFrameSize);
}

template <typename T>
Image<T> flip_horizontal(const Image<T>& f) {
  Image<T> out(f.height, f.width);
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      for (int c = 0; c < kChannels; ++c) out.at(y, f.width - 1 - x, c) = f.at(y, x, c);
    }
  }
  return out;
}

/// in / 255.
ImageF normalize_01(const ImageU8& f);

/// crop -> resize -> normalize.
ImageF preprocess_frame(const ImageU8& f);

/// Frame indices for a T-frame clip: round(i * (len-1) / (T-1)) when
/// len >= T, otherwise every frame followed by the last frame repeated.
std::vector<std::size_t> sample_indices(std::size_t len, int count);

FrameStack sample_frames(const RawFrameSequence& seq, int count = kDefaultClipFrames);

}  // namespace avf::video
