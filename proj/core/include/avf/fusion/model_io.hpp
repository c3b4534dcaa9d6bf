// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "avf/fusion/head.hpp"

namespace avf::fusion {

/// JSON object with keys strategy, audio_dim, video_dim, intermediate_hidden,
/// branch_hidden, combiner_hidden, unimodal_hidden, dropout. Missing keys keep
/// their defaults; unknown keys are a ParseError.
std::string head_config_to_json(const HeadConfig& cfg);
HeadConfig parse_head_config(std::string_view json);

// Fusion checkpoint, little-endian:
//   "AVCK" u32 version(=1) u8 strategy u32 audio_dim u32 video_dim u32 net_count
//   net_count network blocks (see avf/nn/checkpoint.hpp), in net_roles() order.
// Hidden widths and dropout are recovered from the network blocks.
inline constexpr char kCheckpointMagic[4] = {'A', 'V', 'C', 'K'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

void write_checkpoint(std::ostream& out, const FusionHead<float>& head);
FusionHead<float> read_checkpoint(std::istream& in);
void save_checkpoint(const std::filesystem::path& path, const FusionHead<float>& head);
FusionHead<float> load_checkpoint(const std::filesystem::path& path);

}  // namespace avf::fusion
