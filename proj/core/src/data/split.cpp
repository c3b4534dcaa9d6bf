// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/data/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "avf/error.hpp"
#include "avf/seed.hpp"

namespace avf::data {

Split SplitAssignment::of(const std::string& clip_id) const {
  auto it = mapping.find(clip_id);
  if (it == mapping.end()) {
    raise(ErrorCode::kInvalidArgument, "clip '" + clip_id + "' is not in the split");
  }
  return it->second;
}

std::size_t SplitAssignment::count(Split split) const {
  return static_cast<std::size_t>(std::count_if(
      mapping.begin(), mapping.end(),
      [split](const auto& kv) { return kv.second == split; }));
}

SplitAssignment random_split(const ClipManifest& manifest, std::uint64_t seed,
                             double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    raise(ErrorCode::kInvalidArgument, "train_fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> originals;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    if (manifest.entries()[i].is_original()) originals.push_back(i);
  }
  if (originals.empty()) raise(ErrorCode::kEmptyManifest, "no original clips to split");

  Rng rng(seed);
  std::shuffle(originals.begin(), originals.end(), rng);
  const auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(originals.size())));

  SplitAssignment out;
  out.seed = seed;
  out.train_fraction = train_fraction;
  for (std::size_t k = 0; k < originals.size(); ++k) {
    out.mapping[manifest.entries()[originals[k]].id] =
        k < n_train ? Split::kTrain : Split::kValidation;
  }
  for (const ClipEntry& e : manifest.entries()) {
    if (e.is_original()) continue;
    out.mapping[e.id] = out.mapping.at(e.provenance.parent_id);
  }
  return out;
}

ClipManifest apply_split(const ClipManifest& manifest,
                         const SplitAssignment& assignment) {
  std::vector<ClipEntry> entries = manifest.entries();
  for (ClipEntry& e : entries) e.split = assignment.of(e.id);
  return ClipManifest(std::move(entries));
}

}  // namespace avf::data
