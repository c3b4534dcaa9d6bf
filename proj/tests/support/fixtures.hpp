// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "avf/data/manifest.hpp"
#include "avf/error.hpp"

namespace avf::fixture {

/// Error code raised by fn, or ErrorCode{} when it returns normally.
inline ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

/// n originals, alternating nonviolent/violent (balanced for even n).
inline data::ClipManifest manifest(std::size_t n) {
  std::vector<data::ClipEntry> entries;
  for (std::size_t i = 0; i < n; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "clip%04zu", i);
    data::ClipEntry e;
    e.id = id;
    e.media_path = std::string("media/") + id + ".mp4";
    e.label = i % 2 == 0 ? data::Label::kNonViolent : data::Label::kViolent;
    e.duration_s = 5.0;
    entries.push_back(std::move(e));
  }
  return data::ClipManifest(std::move(entries));
}

/// Fresh per-test scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("avf_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::vector<double> noise(std::size_t n, std::uint64_t seed, double amplitude = 0.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

}  // namespace avf::fixture
