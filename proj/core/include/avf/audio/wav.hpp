// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>

#include "avf/audio/waveform.hpp"

namespace avf::audio {

enum class WavEncoding { kPcm16, kFloat32 };

/// RIFF/WAVE decoder for 16-bit PCM and 32-bit IEEE float, mono or stereo
/// (WAVE_FORMAT_EXTENSIBLE with either subformat is accepted).
Waveform read_wav(std::istream& in);
Waveform read_wav(const std::filesystem::path& path);

void write_wav(std::ostream& out, const Waveform& w,
               WavEncoding encoding = WavEncoding::kPcm16);
void write_wav(const std::filesystem::path& path, const Waveform& w,
               WavEncoding encoding = WavEncoding::kPcm16);

}  // namespace avf::audio
