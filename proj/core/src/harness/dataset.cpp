// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/harness/dataset.hpp"

#include <filesystem>

#include "avf/error.hpp"

namespace avf::harness {

namespace {

void require_file(const std::filesystem::path& p, const char* what) {
  if (p.empty() || !std::filesystem::exists(p)) {
    raise(ErrorCode::kMissingArtifacts,
          std::string(what) + " not found" + (p.empty() ? "" : ": " + p.string()));
  }
}

}  // namespace

ExperimentData load_experiment_data(const DataPaths& paths) {
  require_file(paths.manifest, "manifest");
  require_file(paths.audio_embeddings, "audio embeddings");
  require_file(paths.video_embeddings, "video embeddings");
  ExperimentData d;
  d.manifest = data::load_manifest(paths.manifest);
  d.audio = data::EmbeddingStore::load(paths.audio_embeddings, data::Modality::kAudio);
  d.video = data::EmbeddingStore::load(paths.video_embeddings, data::Modality::kVideo);
  return d;
}

fusion::HeadConfig resolve_dims(fusion::HeadConfig head, const ExperimentData& data) {
  if (data.audio.dim() > 0) head.audio_dim = data.audio.dim();
  if (data.video.dim() > 0) head.video_dim = data.video.dim();
  return head;
}

LabeledSet assemble(const ExperimentData& data, const std::vector<std::string>& ids,
                    fusion::Strategy strategy) {
  LabeledSet set;
  set.ids = ids;
  set.examples.reserve(ids.size());
  for (const auto& id : ids) {
    const auto& entry = data.manifest.at(id);
    Example ex;
    ex.label = data::class_index(entry.label);
    if (fusion::uses_audio(strategy)) {
      const auto a = data.audio.at(id);
      ex.input.audio.assign(a.begin(), a.end());
    }
    if (fusion::uses_video(strategy)) {
      const auto v = data.video.at(id);
      ex.input.video.assign(v.begin(), v.end());
    }
    set.examples.push_back(std::move(ex));
  }
  return set;
}

SplitIds split_ids(const data::ClipManifest& manifest, const data::SplitAssignment& split) {
  SplitIds out;
  for (const auto& e : manifest.entries()) {
    const auto s = split.of(e.id);
    if (s == data::Split::kTrain) {
      out.train.push_back(e.id);
    } else if (s == data::Split::kValidation && e.is_original()) {
      out.validation.push_back(e.id);
    }
  }
  return out;
}

}  // namespace avf::harness
