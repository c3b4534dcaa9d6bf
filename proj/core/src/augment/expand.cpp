// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/augment/expand.hpp"

#include "avf/error.hpp"

namespace avf::augment {

std::string augmented_id(const std::string& parent_id, int copy) {
  return parent_id + ".aug" + std::to_string(copy);
}

data::ClipManifest expand_dataset(const data::ClipManifest& manifest,
                                  const AugmentationPolicy& policy, std::uint64_t seed) {
  if (policy.copies_per_clip < 0) {
    raise(ErrorCode::kInvalidArgument, "copies_per_clip must be >= 0");
  }
  for (const auto& e : manifest.entries()) {
    if (!e.is_original()) {
      raise(ErrorCode::kAlreadyAugmented, "clip '" + e.id + "' is already augmented");
    }
  }
  std::vector<data::ClipEntry> entries;
  entries.reserve(manifest.size() * static_cast<std::size_t>(1 + policy.copies_per_clip));
  for (const auto& parent : manifest.entries()) {
    entries.push_back(parent);
    for (int c = 1; c <= policy.copies_per_clip; ++c) {
      Rng rng(derive_seed(seed, parent.id, static_cast<std::uint64_t>(c)));
      ClipAugmentation aug;
      aug.video = sample_spec(Modality::kVideo, policy, rng);
      aug.audio = sample_spec(Modality::kAudio, policy, rng);

      data::ClipEntry child = parent;
      child.id = augmented_id(parent.id, c);
      child.provenance.augmented = true;
      child.provenance.parent_id = parent.id;
      child.provenance.spec = serialize(aug);
      entries.push_back(std::move(child));
    }
  }
  return data::ClipManifest(std::move(entries));
}

ClipAugmentation augmentation_of(const data::ClipEntry& entry) {
  if (entry.is_original()) {
    raise(ErrorCode::kInvalidArgument, "clip '" + entry.id + "' is not augmented");
  }
  if (entry.provenance.spec.empty()) {
    ClipAugmentation none;
    none.audio.modality = Modality::kAudio;
    return none;
  }
  return parse_clip_augmentation(entry.provenance.spec);
}

}  // namespace avf::augment
