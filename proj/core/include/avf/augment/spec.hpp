// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "avf/data/embedding_store.hpp"
#include "avf/seed.hpp"

namespace avf::augment {

using data::Modality;

/// One operator application: name plus named real parameters.
struct OpApplication {
  std::string name;
  std::map<std::string, double> params;

  double param(const std::string& key) const;
  friend bool operator==(const OpApplication&, const OpApplication&) = default;
};

/// Ordered operator list for one modality of one clip. `seed` drives every
/// stochastic operator (noise), so a spec replays to identical output.
struct AugmentationSpec {
  std::uint64_t seed = 0;
  Modality modality = Modality::kVideo;
  std::vector<OpApplication> ops;

  friend bool operator==(const AugmentationSpec&, const AugmentationSpec&) = default;
};

/// Allowed values of one parameter: a closed interval, or a discrete set when
/// `choices` is non-empty.
struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> choices;

  bool contains(double v) const;
  double sample(Rng& rng) const;
};

/// op name -> parameter name -> range. Also the closed set of operators.
using OpRanges = std::map<std::string, std::map<std::string, ParamRange>>;

OpRanges default_video_ranges();
OpRanges default_audio_ranges();
const OpRanges& default_ranges(Modality m);

/// Raises UnknownOp / ParamOutOfRange if the spec is not admissible.
void validate(const AugmentationSpec& spec, const OpRanges& ranges);

struct AugmentationPolicy {
  int copies_per_clip = 2;
  int min_ops = 1;
  int max_ops = 3;
  OpRanges video_ranges = default_video_ranges();
  OpRanges audio_ranges = default_audio_ranges();

  const OpRanges& ranges(Modality m) const {
    return m == Modality::kAudio ? audio_ranges : video_ranges;
  }
};

/// Op count uniform in [min_ops, max_ops] (capped by the operator set), a
/// uniformly random ordered subset of operators, uniform parameters.
AugmentationSpec sample_spec(Modality modality, const AugmentationPolicy& policy, Rng& rng);

/// Audio and video specs drawn independently for one augmented clip.
struct ClipAugmentation {
  AugmentationSpec audio;
  AugmentationSpec video;

  friend bool operator==(const ClipAugmentation&, const ClipAugmentation&) = default;
};

/// Compact single-line JSON, safe for the manifest provenance field.
std::string serialize(const ClipAugmentation& aug);
ClipAugmentation parse_clip_augmentation(const std::string& text);

}  // namespace avf::augment
