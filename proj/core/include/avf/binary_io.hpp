// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

#include "avf/error.hpp"

// Little-endian primitives shared by every on-disk format in the toolkit.
namespace avf::binary {

template <typename U>
  requires std::is_unsigned_v<U>
void put(std::ostream& out, U value) {
  char bytes[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  }
  out.write(bytes, sizeof(U));
}

inline void put_f32(std::ostream& out, float value) {
  put(out, std::bit_cast<std::uint32_t>(value));
}

inline void put_f64(std::ostream& out, double value) {
  put(out, std::bit_cast<std::uint64_t>(value));
}

inline void put_bytes(std::ostream& out, std::string_view bytes) {
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

/// Reads exactly n bytes or raises TruncatedFile.
inline void get_bytes(std::istream& in, char* dst, std::size_t n,
                      std::string_view what) {
  in.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    raise(ErrorCode::kTruncatedFile, "unexpected end of file reading " +
                                         std::string(what));
  }
}

template <typename U>
  requires std::is_unsigned_v<U>
U get(std::istream& in, std::string_view what) {
  unsigned char bytes[sizeof(U)];
  get_bytes(in, reinterpret_cast<char*>(bytes), sizeof(U), what);
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    value |= static_cast<U>(bytes[i]) << (8 * i);
  }
  return value;
}

inline float get_f32(std::istream& in, std::string_view what) {
  return std::bit_cast<float>(get<std::uint32_t>(in, what));
}

inline double get_f64(std::istream& in, std::string_view what) {
  return std::bit_cast<double>(get<std::uint64_t>(in, what));
}

inline std::string get_string(std::istream& in, std::size_t n,
                              std::string_view what) {
  std::string s(n, '\0');
  if (n > 0) get_bytes(in, s.data(), n, what);
  return s;
}

/// True when the stream has no bytes left.
inline bool at_eof(std::istream& in) {
  return in.peek() == std::char_traits<char>::eof();
}

}  // namespace avf::binary
