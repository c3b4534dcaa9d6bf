// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/video/frame_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>

#include "avf/binary_io.hpp"
#include "avf/error.hpp"

namespace avf::video {

namespace {

int read_ppm_int(std::istream& in) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    }
    c = in.get();
  }
  if (c == EOF || !std::isdigit(c)) raise(ErrorCode::kCorruptHeader, "bad PPM header");
  int v = 0;
  while (c != EOF && std::isdigit(c)) {
    v = v * 10 + (c - '0');
    c = in.get();
  }
  return v;  // the single whitespace after the value has been consumed
}

}  // namespace

ImageU8 read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::kIo, "cannot open " + path.string());
  char magic[2];
  binary::get_bytes(in, magic, 2, "PPM magic");
  if (magic[0] != 'P' || magic[1] != '6') {
    raise(ErrorCode::kCorruptHeader, path.string() + " is not a binary PPM");
  }
  const int w = read_ppm_int(in);
  const int h = read_ppm_int(in);
  const int maxval = read_ppm_int(in);
  if (w < 1 || h < 1 || maxval != 255) {
    raise(ErrorCode::kCorruptHeader, "unsupported PPM geometry in " + path.string());
  }
  ImageU8 img(h, w);
  binary::get_bytes(in, reinterpret_cast<char*>(img.pixels.data()), img.pixels.size(),
                    "PPM pixels");
  return img;
}

void write_ppm(const std::filesystem::path& path, const ImageU8& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::kIo, "cannot write " + path.string());
  out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
}

RawFrameSequence read_frame_directory(const std::filesystem::path& dir, std::string clip_id,
                                      double fps) {
  if (!std::filesystem::is_directory(dir)) {
    raise(ErrorCode::kMissingArtifacts, "frame directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ppm") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  RawFrameSequence seq;
  seq.clip_id = std::move(clip_id);
  seq.fps = fps;
  for (const auto& f : files) seq.frames.push_back(read_ppm(f));
  return seq;
}

RawFrameSequence read_raw_rgb(const std::filesystem::path& path, int width, int height,
                              std::string clip_id, double fps) {
  if (width < 1 || height < 1) raise(ErrorCode::kInvalidArgument, "raw frame size must be positive");
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::kMissingArtifacts, "cannot open " + path.string());
  RawFrameSequence seq;
  seq.clip_id = std::move(clip_id);
  seq.fps = fps;
  const std::size_t frame_bytes = static_cast<std::size_t>(width) * height * kChannels;
  while (!binary::at_eof(in)) {
    ImageU8 img(height, width);
    binary::get_bytes(in, reinterpret_cast<char*>(img.pixels.data()), frame_bytes,
                      "raw rgb frame");
    seq.frames.push_back(std::move(img));
  }
  return seq;
}

void write_frame_stack(std::ostream& out, const FrameStack& stack) {
  binary::put_bytes(out, {kFrameStackMagic, 4});
  binary::put(out, kFrameStackVersion);
  binary::put(out, static_cast<std::uint16_t>(stack.clip_id.size()));
  binary::put_bytes(out, stack.clip_id);
  binary::put(out, static_cast<std::uint32_t>(stack.frames));
  binary::put(out, static_cast<std::uint32_t>(stack.size));
  binary::put(out, static_cast<std::uint32_t>(stack.size));
  binary::put(out, static_cast<std::uint32_t>(kChannels));
  for (float v : stack.values) binary::put_f32(out, v);
}

void write_frame_stack(const std::filesystem::path& path, const FrameStack& stack) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::kIo, "cannot write " + path.string());
  write_frame_stack(out, stack);
}

FrameStack read_frame_stack(std::istream& in) {
  char magic[4];
  binary::get_bytes(in, magic, 4, "frame-stack magic");
  if (std::memcmp(magic, kFrameStackMagic, 4) != 0) {
    raise(ErrorCode::kCorruptHeader, "not a frame-stack file");
  }
  if (binary::get<std::uint32_t>(in, "version") != kFrameStackVersion) {
    raise(ErrorCode::kCorruptHeader, "unsupported frame-stack version");
  }
  std::string id = binary::get_string(in, binary::get<std::uint16_t>(in, "id length"), "clip id");
  const auto t = binary::get<std::uint32_t>(in, "T");
  const auto h = binary::get<std::uint32_t>(in, "H");
  const auto w = binary::get<std::uint32_t>(in, "W");
  const auto c = binary::get<std::uint32_t>(in, "C");
  if (h != w || c != kChannels) raise(ErrorCode::kCorruptHeader, "unexpected frame-stack shape");
  FrameStack stack(std::move(id), static_cast<int>(t), static_cast<int>(h));
  for (float& v : stack.values) v = binary::get_f32(in, "frame-stack cells");
  return stack;
}

FrameStack read_frame_stack(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::kMissingArtifacts, "cannot open " + path.string());
  return read_frame_stack(in);
}

}  // namespace avf::video
