// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "avf/nn/mlp.hpp"

namespace avf::nn {

// Network block (embedded in every checkpoint):
//   u32 layer_count
//   layer_count x ( u32 in, u32 out, u8 activation, f64 dropout_after )
//   for each layer: out*in f32 weights (row-major), out f32 bias
// Standalone MLP checkpoint: "AVNN" u32 version(=1) then one network block.
// All little-endian. float networks round-trip bit-exactly.
inline constexpr char kMlpMagic[4] = {'A', 'V', 'N', 'N'};
inline constexpr std::uint32_t kMlpVersion = 1;

template <typename T>
void write_network(std::ostream& out, const Mlp<T>& net);
template <typename T>
Mlp<T> read_network(std::istream& in);

void save_mlp(const std::filesystem::path& path, const Mlp<float>& net);
Mlp<float> load_mlp(const std::filesystem::path& path);

}  // namespace avf::nn
