// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/video/frontend.hpp"

#include <algorithm>

namespace avf::video {

namespace detail {

std::vector<Taps> bilinear_taps(int in_size, int out_size) {
  const std::int64_t denom = 2 * static_cast<std::int64_t>(out_size);
  std::vector<Taps> taps(static_cast<std::size_t>(out_size));
  for (int d = 0; d < out_size; ++d) {
    const std::int64_t num = (2 * static_cast<std::int64_t>(d) + 1) * in_size - out_size;
    std::int64_t i0 = 0;
    std::int64_t rem = 0;
    if (num > 0) {
      i0 = num / denom;
      rem = num % denom;
    }
    if (i0 >= in_size - 1) {
      i0 = in_size - 1;
      rem = 0;
    }
    Taps& t = taps[static_cast<std::size_t>(d)];
    t.i0 = static_cast<int>(i0);
    t.i1 = static_cast<int>(std::min<std::int64_t>(i0 + 1, in_size - 1));
    t.w1 = static_cast<double>(rem) / static_cast<double>(denom);
    t.w0 = static_cast<double>(denom - rem) / static_cast<double>(denom);
  }
  return taps;
}

}  // namespace detail

ImageF normalize_01(const ImageU8& f) {
  ImageF out(f.height, f.width);
  for (std::size_t i = 0; i < f.pixels.size(); ++i) {
    out.pixels[i] = static_cast<float>(f.pixels[i] / 255.0);
  }
  return out;
}

ImageF preprocess_frame(const ImageU8& f) {
  return normalize_01(resize_224(center_square_crop(f)));
}

std::vector<std::size_t> sample_indices(std::size_t len, int count) {
  if (len == 0) raise(ErrorCode::kEmptySequence, "no frames to sample");
  if (count < 1) raise(ErrorCode::kInvalidArgument, "frame count must be >= 1");
  const auto t = static_cast<std::size_t>(count);
  std::vector<std::size_t> idx(t);
  if (len < t) {
    for (std::size_t i = 0; i < t; ++i) idx[i] = std::min(i, len - 1);
  } else if (t == 1) {
    idx[0] = 0;
  } else {
    // round half up of i*(len-1)/(t-1), in integers
    for (std::size_t i = 0; i < t; ++i) {
      idx[i] = (2 * i * (len - 1) + (t - 1)) / (2 * (t - 1));
    }
  }
  return idx;
}

FrameStack sample_frames(const RawFrameSequence& seq, int count) {
  if (seq.frames.empty()) raise(ErrorCode::kEmptySequence, "clip '" + seq.clip_id + "' has no frames");
  const auto idx = sample_indices(seq.frames.size(), count);
  FrameStack stack(seq.clip_id, count, kFrameSize);
  // Repeated indices (padding) reuse the processed frame.
  std::size_t last = seq.frames.size();
  ImageF processed;
  for (int t = 0; t < count; ++t) {
    const std::size_t i = idx[static_cast<std::size_t>(t)];
    if (i != last) {
      const ImageU8& f = seq.frames[i];
      if (f.height != seq.frames.front().height || f.width != seq.frames.front().width) {
        raise(ErrorCode::kShapeMismatch, "frames of clip '" + seq.clip_id + "' differ in size");
      }
      processed = preprocess_frame(f);
      last = i;
    }
    std::copy(processed.pixels.begin(), processed.pixels.end(), stack.frame(t).begin());
  }
  return stack;
}

}  // namespace avf::video
