// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/audio/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "avf/binary_io.hpp"
#include "avf/error.hpp"

namespace avf::audio {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xfffe;

void expect_tag(std::istream& in, const char* tag) {
  char got[4];
  binary::get_bytes(in, got, 4, "RIFF tag");
  if (std::memcmp(got, tag, 4) != 0) {
    raise(ErrorCode::kCorruptHeader, std::string("expected WAV tag ") + tag);
  }
}

}  // namespace

Waveform read_wav(std::istream& in) {
  expect_tag(in, "RIFF");
  binary::get<std::uint32_t>(in, "RIFF size");
  expect_tag(in, "WAVE");

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  while (true) {
    char tag[4];
    binary::get_bytes(in, tag, 4, "chunk tag");
    const auto size = binary::get<std::uint32_t>(in, "chunk size");
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (size < 16) raise(ErrorCode::kCorruptHeader, "short fmt chunk");
      format = binary::get<std::uint16_t>(in, "format");
      channels = binary::get<std::uint16_t>(in, "channels");
      rate = binary::get<std::uint32_t>(in, "rate");
      binary::get<std::uint32_t>(in, "byte rate");
      binary::get<std::uint16_t>(in, "block align");
      bits = binary::get<std::uint16_t>(in, "bits");
      std::uint32_t consumed = 16;
      if (format == kFormatExtensible && size >= 40) {
        binary::get<std::uint16_t>(in, "cb size");
        binary::get<std::uint16_t>(in, "valid bits");
        binary::get<std::uint32_t>(in, "channel mask");
        format = binary::get<std::uint16_t>(in, "subformat");
        consumed += 10;
      }
      in.ignore(size - consumed + (size & 1));
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt) raise(ErrorCode::kCorruptHeader, "data chunk before fmt chunk");
      if (channels != 1 && channels != 2) {
        raise(ErrorCode::kInvalidArgument, "only mono or stereo WAV is supported");
      }
      Waveform w;
      w.sample_rate_hz = static_cast<int>(rate);
      w.channels = channels;
      if (format == kFormatPcm && bits == 16) {
        const std::size_t n = size / 2;
        w.samples.resize(n);
        for (auto& s : w.samples) {
          const auto raw = static_cast<std::int16_t>(binary::get<std::uint16_t>(in, "pcm"));
          s = raw / 32768.0;
        }
      } else if (format == kFormatFloat && bits == 32) {
        const std::size_t n = size / 4;
        w.samples.resize(n);
        for (auto& s : w.samples) s = binary::get_f32(in, "float samples");
      } else {
        raise(ErrorCode::kInvalidArgument,
              "unsupported WAV encoding (format " + std::to_string(format) +
                  ", " + std::to_string(bits) + " bits)");
      }
      w.samples.resize(w.samples.size() - w.samples.size() % channels);
      return w;
    } else {
      in.ignore(size + (size & 1));
      if (!in) raise(ErrorCode::kTruncatedFile, "WAV ended inside a chunk");
    }
  }
}

Waveform read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::kIo, "cannot open " + path.string());
  return read_wav(in);
}

void write_wav(std::ostream& out, const Waveform& w, WavEncoding encoding) {
  const std::uint16_t bits = encoding == WavEncoding::kPcm16 ? 16 : 32;
  const std::uint16_t format = encoding == WavEncoding::kPcm16 ? kFormatPcm : kFormatFloat;
  const auto channels = static_cast<std::uint16_t>(w.channels);
  const auto data_bytes = static_cast<std::uint32_t>(w.samples.size() * bits / 8);
  const std::uint16_t block = static_cast<std::uint16_t>(channels * bits / 8);
  binary::put_bytes(out, "RIFF");
  binary::put(out, static_cast<std::uint32_t>(36 + data_bytes));
  binary::put_bytes(out, "WAVEfmt ");
  binary::put(out, std::uint32_t{16});
  binary::put(out, format);
  binary::put(out, channels);
  binary::put(out, static_cast<std::uint32_t>(w.sample_rate_hz));
  binary::put(out, static_cast<std::uint32_t>(w.sample_rate_hz) * block);
  binary::put(out, block);
  binary::put(out, bits);
  binary::put_bytes(out, "data");
  binary::put(out, data_bytes);
  for (double s : w.samples) {
    if (encoding == WavEncoding::kPcm16) {
      const double scaled = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
      binary::put(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
    } else {
      binary::put_f32(out, static_cast<float>(s));
    }
  }
}

void write_wav(const std::filesystem::path& path, const Waveform& w,
               WavEncoding encoding) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::kIo, "cannot write " + path.string());
  write_wav(out, w, encoding);
}

}  // namespace avf::audio
