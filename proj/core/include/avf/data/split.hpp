// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "avf/data/manifest.hpp"

namespace avf::data {

inline constexpr double kDefaultTrainFraction = 0.8;

struct SplitAssignment {
  std::uint64_t seed = 0;
  double train_fraction = kDefaultTrainFraction;
  std::map<std::string, Split> mapping;

  Split of(const std::string& clip_id) const;
  std::size_t count(Split split) const;

  friend bool operator==(const SplitAssignment&, const SplitAssignment&) = default;
};

/// Shuffles the original clips with a seeded generator and cuts the shuffled
/// order at round(train_fraction * originals); augmented clips follow their
/// parent so no augmented copy of a validation clip is ever trained on.
SplitAssignment random_split(const ClipManifest& manifest, std::uint64_t seed,
                             double train_fraction = kDefaultTrainFraction);

/// Copy of the manifest with every entry's split field set from the mapping.
ClipManifest apply_split(const ClipManifest& manifest,
                         const SplitAssignment& assignment);

}  // namespace avf::data
