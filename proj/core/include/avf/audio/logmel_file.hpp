// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "avf/matrix.hpp"

namespace avf::audio {

// Log-mel tensor file written by `prep-audio`, one per clip:
//   "AVLM"  u32 version(=1)  u16 id_len  id bytes  u32 frames  u32 bands
//   frames x bands f32 (row-major, frame-major)
// all little-endian.
inline constexpr char kLogMelMagic[4] = {'A', 'V', 'L', 'M'};
inline constexpr std::uint32_t kLogMelVersion = 1;

struct LogMelTensor {
  std::string clip_id;
  BasicMatrix<float> cells;  // frames x 64
};

void write_logmel(std::ostream& out, const std::string& clip_id, const Matrix& logmel);
void write_logmel(const std::filesystem::path& path, const std::string& clip_id,
                  const Matrix& logmel);
LogMelTensor read_logmel(std::istream& in);
LogMelTensor read_logmel(const std::filesystem::path& path);

}  // namespace avf::audio
