// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "avf/video/image.hpp"

namespace avf::video {

/// Binary PPM (P6, maxval 255).
ImageU8 read_ppm(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const ImageU8& img);

/// Every *.ppm in `dir`, in lexicographic file-name order.
RawFrameSequence read_frame_directory(const std::filesystem::path& dir, std::string clip_id,
                                      double fps = 25.0);

/// Headerless rgb24 dump (e.g. `ffmpeg -f rawvideo -pix_fmt rgb24`): frames
/// of width x height x 3 bytes back to back.
RawFrameSequence read_raw_rgb(const std::filesystem::path& path, int width, int height,
                              std::string clip_id, double fps = 25.0);

// Frame-stack file written by `prep-video`:
//   "AVFS"  u32 version(=1)  u16 id_len  id bytes  u32 T  u32 H  u32 W  u32 C
//   T x H x W x C f32
// all little-endian.
inline constexpr char kFrameStackMagic[4] = {'A', 'V', 'F', 'S'};
inline constexpr std::uint32_t kFrameStackVersion = 1;

void write_frame_stack(std::ostream& out, const FrameStack& stack);
void write_frame_stack(const std::filesystem::path& path, const FrameStack& stack);
FrameStack read_frame_stack(std::istream& in);
FrameStack read_frame_stack(const std::filesystem::path& path);

}  // namespace avf::video
