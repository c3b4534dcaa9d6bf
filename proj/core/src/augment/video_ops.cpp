// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "avf/augment/ops.hpp"
#include "avf/error.hpp"

namespace avf::augment {

namespace ops {

namespace {

using video::kChannels;

std::size_t idx(int size, int y, int x, int c) {
  return (static_cast<std::size_t>(y) * static_cast<std::size_t>(size) +
          static_cast<std::size_t>(x)) * kChannels + static_cast<std::size_t>(c);
}

// Reflect-101 border (…2 1 | 0 1 2 … n-1 | n-2 …).
int reflect(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return i;
}

}  // namespace

void color_jitter(std::span<float> frame, double gain_r, double gain_g, double gain_b) {
  const std::array<double, 3> gains{gain_r, gain_g, gain_b};
  for (std::size_t i = 0; i < frame.size(); ++i) {
    frame[i] = static_cast<float>(frame[i] * gains[i % kChannels]);
  }
}

void brightness_contrast(std::span<float> frame, double alpha, double beta) {
  for (float& v : frame) v = static_cast<float>(std::clamp(alpha * v + beta, 0.0, 1.0));
}

void flip(std::span<float> frame, int size, int axis) {
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const int ty = axis == 1 ? size - 1 - y : y;
      const int tx = axis == 0 ? size - 1 - x : x;
      // swap each pair once
      if (idx(size, ty, tx, 0) <= idx(size, y, x, 0)) continue;
      for (int c = 0; c < kChannels; ++c) {
        std::swap(frame[idx(size, y, x, c)], frame[idx(size, ty, tx, c)]);
      }
    }
  }
}

void rotate(std::span<float> frame, int size, double angle_deg) {
  const std::vector<float> src(frame.begin(), frame.end());
  const double theta = angle_deg * std::numbers::pi / 180.0;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const double center = (size - 1) / 2.0;
  auto sample = [&](int y, int x, int c) -> double {
    if (y < 0 || x < 0 || y >= size || x >= size) return 0.0;
    return src[idx(size, y, x, c)];
  };
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      // inverse map: rotate the output coordinate by -theta (image y points down)
      const double dx = x - center;
      const double dy = y - center;
      const double sx = cs * dx - sn * dy + center;
      const double sy = sn * dx + cs * dy + center;
      const int x0 = static_cast<int>(std::floor(sx));
      const int y0 = static_cast<int>(std::floor(sy));
      const double fx = sx - x0;
      const double fy = sy - y0;
      for (int c = 0; c < kChannels; ++c) {
        const double top = (1 - fx) * sample(y0, x0, c) + fx * sample(y0, x0 + 1, c);
        const double bottom = (1 - fx) * sample(y0 + 1, x0, c) + fx * sample(y0 + 1, x0 + 1, c);
        frame[idx(size, y, x, c)] = static_cast<float>((1 - fy) * top + fy * bottom);
      }
    }
  }
}

void gaussian_blur(std::span<float> frame, int size, int kernel, double sigma) {
  const int r = kernel / 2;
  std::vector<double> k(static_cast<std::size_t>(kernel));
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) {
    k[static_cast<std::size_t>(i + r)] = std::exp(-(i * i) / (2.0 * sigma * sigma));
    sum += k[static_cast<std::size_t>(i + r)];
  }
  for (double& v : k) v /= sum;

  std::vector<double> tmp(frame.size());
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      for (int c = 0; c < kChannels; ++c) {
        double acc = 0.0;
        for (int i = -r; i <= r; ++i) {
          acc += k[static_cast<std::size_t>(i + r)] * frame[idx(size, y, reflect(x + i, size), c)];
        }
        tmp[idx(size, y, x, c)] = acc;
      }
    }
  }
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      for (int c = 0; c < kChannels; ++c) {
        double acc = 0.0;
        for (int i = -r; i <= r; ++i) {
          acc += k[static_cast<std::size_t>(i + r)] * tmp[idx(size, reflect(y + i, size), x, c)];
        }
        frame[idx(size, y, x, c)] = static_cast<float>(acc);
      }
    }
  }
}

void median_blur(std::span<float> frame, int size, int kernel) {
  const std::vector<float> src(frame.begin(), frame.end());
  const int r = kernel / 2;
  std::vector<float> window(static_cast<std::size_t>(kernel * kernel));
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      for (int c = 0; c < kChannels; ++c) {
        std::size_t n = 0;
        for (int dy = -r; dy <= r; ++dy) {
          for (int dx = -r; dx <= r; ++dx) {
            const int yy = std::clamp(y + dy, 0, size - 1);
            const int xx = std::clamp(x + dx, 0, size - 1);
            window[n++] = src[idx(size, yy, xx, c)];
          }
        }
        std::nth_element(window.begin(), window.begin() + static_cast<std::ptrdiff_t>(n / 2),
                         window.end());
        frame[idx(size, y, x, c)] = window[n / 2];
      }
    }
  }
}

}  // namespace ops

video::FrameStack augment_video(const video::FrameStack& stack, const AugmentationSpec& spec,
                                const OpRanges& ranges) {
  if (spec.modality != Modality::kVideo) {
    raise(ErrorCode::kInvalidArgument, "augment_video needs a video spec");
  }
  validate(spec, ranges);
  video::FrameStack out = stack;
  for (std::size_t k = 0; k < spec.ops.size(); ++k) {
    const OpApplication& op = spec.ops[k];
    if (op.name == "additive_noise") {
      Rng rng(derive_seed(spec.seed, k));
      std::normal_distribution<double> noise(0.0, op.param("sigma"));
      for (float& v : out.values) v = static_cast<float>(v + noise(rng));
      continue;
    }
    for (int t = 0; t < out.frames; ++t) {
      auto frame = out.frame(t);
      if (op.name == "color_jitter") {
        ops::color_jitter(frame, op.param("gain_r"), op.param("gain_g"), op.param("gain_b"));
      } else if (op.name == "rotation") {
        ops::rotate(frame, out.size, op.param("angle_deg"));
      } else if (op.name == "flip") {
        ops::flip(frame, out.size, static_cast<int>(op.param("axis")));
      } else if (op.name == "gaussian_blur") {
        ops::gaussian_blur(frame, out.size, static_cast<int>(op.param("kernel")), op.param("sigma"));
      } else if (op.name == "median_blur") {
        ops::median_blur(frame, out.size, static_cast<int>(op.param("kernel")));
      } else if (op.name == "brightness_contrast") {
        ops::brightness_contrast(frame, op.param("alpha"), op.param("beta"));
      } else {
        raise(ErrorCode::kUnknownOp, "no video implementation for op '" + op.name + "'");
      }
    }
  }
  for (float& v : out.values) v = std::clamp(v, 0.0f, 1.0f);
  return out;
}

}  // namespace avf::augment
