// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "avf/data/embedding_store.hpp"
#include "avf/data/manifest.hpp"
#include "avf/data/split.hpp"
#include "avf/fusion/head.hpp"
#include "avf/harness/config.hpp"
#include "avf/nn/train.hpp"

namespace avf::harness {

using Example = nn::LabeledExample<fusion::FusionInput<float>>;

struct ExperimentData {
  data::ClipManifest manifest;
  data::EmbeddingStore audio;
  data::EmbeddingStore video;
};

/// Raises MissingArtifacts when the manifest or an embedding file is absent.
ExperimentData load_experiment_data(const DataPaths& paths);

/// Head config with embedding dims taken from the stores.
fusion::HeadConfig resolve_dims(fusion::HeadConfig head, const ExperimentData& data);

struct LabeledSet {
  std::vector<std::string> ids;
  std::vector<Example> examples;
};

/// Embeddings for the given clips, fetching only the modalities `strategy`
/// uses. Raises MissingEmbedding.
LabeledSet assemble(const ExperimentData& data, const std::vector<std::string>& ids,
                    fusion::Strategy strategy);

/// Training clips (originals and their augmented copies) and validation clips
/// (originals only) under `split`.
struct SplitIds {
  std::vector<std::string> train;
  std::vector<std::string> validation;
};
SplitIds split_ids(const data::ClipManifest& manifest, const data::SplitAssignment& split);

}  // namespace avf::harness
