// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/audio/logmel_file.hpp"

#include <cstring>
#include <fstream>

#include "avf/binary_io.hpp"
#include "avf/error.hpp"

namespace avf::audio {

void write_logmel(std::ostream& out, const std::string& clip_id, const Matrix& logmel) {
  binary::put_bytes(out, {kLogMelMagic, 4});
  binary::put(out, kLogMelVersion);
  binary::put(out, static_cast<std::uint16_t>(clip_id.size()));
  binary::put_bytes(out, clip_id);
  binary::put(out, static_cast<std::uint32_t>(logmel.rows()));
  binary::put(out, static_cast<std::uint32_t>(logmel.cols()));
  for (double v : logmel.data()) binary::put_f32(out, static_cast<float>(v));
}

void write_logmel(const std::filesystem::path& path, const std::string& clip_id,
                  const Matrix& logmel) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::kIo, "cannot write " + path.string());
  write_logmel(out, clip_id, logmel);
}

LogMelTensor read_logmel(std::istream& in) {
  char magic[4];
  binary::get_bytes(in, magic, 4, "log-mel magic");
  if (std::memcmp(magic, kLogMelMagic, 4) != 0) {
    raise(ErrorCode::kCorruptHeader, "not a log-mel tensor file");
  }
  if (binary::get<std::uint32_t>(in, "version") != kLogMelVersion) {
    raise(ErrorCode::kCorruptHeader, "unsupported log-mel version");
  }
  LogMelTensor t;
  t.clip_id = binary::get_string(in, binary::get<std::uint16_t>(in, "id length"), "clip id");
  const auto frames = binary::get<std::uint32_t>(in, "frames");
  const auto bands = binary::get<std::uint32_t>(in, "bands");
  t.cells = BasicMatrix<float>(frames, bands);
  for (float& v : t.cells.data()) v = binary::get_f32(in, "log-mel cells");
  return t;
}

LogMelTensor read_logmel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::kMissingArtifacts, "cannot open " + path.string());
  return read_logmel(in);
}

}  // namespace avf::audio
