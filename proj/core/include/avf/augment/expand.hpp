// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "avf/augment/spec.hpp"
#include "avf/data/manifest.hpp"

namespace avf::augment {

/// Id of the k-th (1-based) augmented copy of a clip.
std::string augmented_id(const std::string& parent_id, int copy);

/// Adds policy.copies_per_clip augmented entries after each original. Every
/// copy draws independent audio and video specs from a generator seeded by
/// (seed, parent id, copy index), so results do not depend on processing
/// order. Copies inherit label, split, media path and duration; the specs are
/// stored in the provenance field.
data::ClipManifest expand_dataset(const data::ClipManifest& manifest,
                                  const AugmentationPolicy& policy, std::uint64_t seed);

/// Specs recorded on an augmented entry.
ClipAugmentation augmentation_of(const data::ClipEntry& entry);

}  // namespace avf::augment
