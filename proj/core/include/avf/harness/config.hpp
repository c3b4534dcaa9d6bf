// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "avf/augment/spec.hpp"
#include "avf/fusion/head.hpp"
#include "avf/nn/adam.hpp"

namespace avf::harness {

/// Discrete choices per searched hyperparameter. An empty list keeps the
/// base config's value for that parameter.
struct SearchSpace {
  std::vector<double> dropout = {0.3, 0.5, 0.7};
  std::vector<double> learning_rate = {1e-4, 3e-4, 1e-3};
  std::vector<std::size_t> batch_size = {7, 16, 32};
  std::vector<std::vector<std::size_t>> intermediate_hidden;
  std::vector<std::vector<std::size_t>> branch_hidden;
  std::vector<std::vector<std::size_t>> combiner_hidden;
  int budget = 8;

  bool empty() const;
  /// Number of distinct points (product of the non-empty list sizes).
  std::size_t point_count() const;
};

struct EncoderSelection {
  std::string audio = "toy";  // "toy" or "file"
  std::string video = "toy";
  std::size_t audio_dim = 128;
  std::size_t video_dim = 1024;
};

struct DataPaths {
  std::filesystem::path manifest;
  std::filesystem::path audio_embeddings;
  std::filesystem::path video_embeddings;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  int run_count = 3;
  double train_fraction = 0.8;
  fusion::HeadConfig head;
  nn::TrainingConfig training;
  augment::AugmentationPolicy augmentation;
  EncoderSelection encoders;
  DataPaths data;
  SearchSpace search;
};

void validate(const ExperimentConfig& cfg);

/// Every field is optional in the JSON text; missing ones keep the defaults
/// above. Unknown keys are a ParseError. Relative data paths are resolved
/// against `base_dir`.
ExperimentConfig parse_experiment_config(std::string_view json,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
std::string experiment_config_to_json(const ExperimentConfig& cfg);

}  // namespace avf::harness
