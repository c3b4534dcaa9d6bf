// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "avf/audio/waveform.hpp"
#include "avf/augment/spec.hpp"
#include "avf/video/image.hpp"

namespace avf::augment {

/// Applies spec.ops in order, identically to every frame, then clamps to
/// [0, 1]. Shape is preserved.
video::FrameStack augment_video(const video::FrameStack& stack, const AugmentationSpec& spec,
                                const OpRanges& ranges = default_video_ranges());

/// Applies spec.ops in order to a mono waveform, then clamps to [-1, 1].
/// Sample count and rate are preserved exactly.
audio::Waveform augment_audio(const audio::Waveform& w, const AugmentationSpec& spec,
                              const OpRanges& ranges = default_audio_ranges());

// Individual operators, exposed for testing. Frame operators work on one
// square H x W x 3 float frame in place.
namespace ops {

void color_jitter(std::span<float> frame, double gain_r, double gain_g, double gain_b);
void brightness_contrast(std::span<float> frame, double alpha, double beta);
void flip(std::span<float> frame, int size, int axis);
/// Rotation about the frame center by angle_deg (counterclockwise);
/// samples falling outside the frame are zero.
void rotate(std::span<float> frame, int size, double angle_deg);
void gaussian_blur(std::span<float> frame, int size, int kernel, double sigma);
void median_blur(std::span<float> frame, int size, int kernel);

/// Length-preserving pitch shift: phase-vocoder time stretch by 2^(s/12)
/// followed by band-limited resampling back to the input length.
std::vector<double> pitch_shift(std::span<const double> x, int sample_rate, double semitones);
/// Phase-vocoder time stretch to round(len * factor) samples.
std::vector<double> time_stretch(std::span<const double> x, double factor);
/// First-order bilinear-transform low-pass (mode 0) or high-pass (mode 1).
std::vector<double> first_order_filter(std::span<const double> x, int sample_rate, int mode,
                                       double cutoff_hz);

}  // namespace ops

}  // namespace avf::augment
