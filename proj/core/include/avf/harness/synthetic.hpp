// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>

#include "avf/harness/config.hpp"
#include "avf/harness/dataset.hpp"

namespace avf::harness {

/// Two-class Gaussian benchmark in embedding space. Each modality's class
/// means differ by `separation` along one random unit direction; all other
/// coordinates are N(0, 1) noise. The unit-variance noise components along
/// the two discriminant directions are correlated with coefficient
/// `correlation`, so joint evidence beats either modality alone.
struct SyntheticSpec {
  std::size_t clips = 1800;  // balanced; odd counts give the extra clip to class 0
  std::size_t audio_dim = 32;
  std::size_t video_dim = 32;
  double audio_separation = 1.683;   // Bayes accuracy ~80%
  double video_separation = 2.6815;  // Bayes accuracy ~91%
  double correlation = -0.308;       // joint Bayes accuracy ~97%
  std::uint64_t seed = 0;
};

void validate(const SyntheticSpec& spec);

/// Exact Bayes accuracies (equal priors, shared covariance).
double bayes_accuracy(double separation);
double audio_bayes_accuracy(const SyntheticSpec& spec);
double video_bayes_accuracy(const SyntheticSpec& spec);
double joint_bayes_accuracy(const SyntheticSpec& spec);

/// Ids are synth_00000, synth_00001, ...; labels alternate starting with
/// NonViolent. No splits are assigned.
ExperimentData make_synthetic(const SyntheticSpec& spec);

/// Writes manifest.tsv, audio.avfe and video.avfe into `dir` and returns
/// their paths.
DataPaths write_synthetic(const SyntheticSpec& spec, const std::filesystem::path& dir);

/// Default experiment settings for the benchmark.
ExperimentConfig synthetic_experiment_config(std::uint64_t seed = 0);

}  // namespace avf::harness
