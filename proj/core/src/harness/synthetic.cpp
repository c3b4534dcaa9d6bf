// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/harness/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "avf/error.hpp"
#include "avf/seed.hpp"

namespace avf::harness {

namespace {

std::vector<double> random_unit(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> u(dim);
  double norm = 0.0;
  while (norm < 1e-6) {
    norm = 0.0;
    for (auto& x : u) {
      x = normal(rng);
      norm += x * x;
    }
    norm = std::sqrt(norm);
  }
  for (auto& x : u) x /= norm;
  return u;
}

/// Isotropic noise whose component along `u` is replaced by `along`.
std::vector<float> sample(const std::vector<double>& u, double along, Rng& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> x(u.size());
  double proj = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = normal(rng);
    proj += x[k] * u[k];
  }
  std::vector<float> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    out[k] = static_cast<float>(x[k] + (along - proj) * u[k]);
  }
  return out;
}

}  // namespace

void validate(const SyntheticSpec& spec) {
  if (spec.clips < 2) raise(ErrorCode::kInvalidArgument, "need at least 2 clips");
  if (spec.audio_dim == 0 || spec.video_dim == 0) {
    raise(ErrorCode::kInvalidArgument, "dims must be positive");
  }
  if (!(std::abs(spec.correlation) < 1.0)) {
    raise(ErrorCode::kInvalidArgument, "correlation must lie in (-1, 1)");
  }
}

double bayes_accuracy(double separation) {
  // Phi(d / 2)
  return 0.5 * std::erfc(-separation / (2.0 * std::sqrt(2.0)));
}

double audio_bayes_accuracy(const SyntheticSpec& spec) {
  return bayes_accuracy(spec.audio_separation);
}

double video_bayes_accuracy(const SyntheticSpec& spec) {
  return bayes_accuracy(spec.video_separation);
}

double joint_bayes_accuracy(const SyntheticSpec& spec) {
  // Mahalanobis distance of the mean difference (da, dv) under the 2x2
  // correlation matrix [[1, r], [r, 1]].
  const double da = spec.audio_separation;
  const double dv = spec.video_separation;
  const double r = spec.correlation;
  const double d2 = (da * da + dv * dv - 2.0 * r * da * dv) / (1.0 - r * r);
  return bayes_accuracy(std::sqrt(d2));
}

ExperimentData make_synthetic(const SyntheticSpec& spec) {
  validate(spec);
  Rng geometry(derive_seed(spec.seed, "synthetic-directions"));
  const auto ua = random_unit(spec.audio_dim, geometry);
  const auto uv = random_unit(spec.video_dim, geometry);

  Rng rng(derive_seed(spec.seed, "synthetic-samples"));
  std::normal_distribution<double> normal;
  const double residual = std::sqrt(1.0 - spec.correlation * spec.correlation);

  std::vector<data::ClipEntry> entries;
  std::vector<data::EmbeddingRecord> audio;
  std::vector<data::EmbeddingRecord> video;
  for (std::size_t i = 0; i < spec.clips; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "synth_%05zu", i);
    const auto label = i % 2 == 0 ? data::Label::kNonViolent : data::Label::kViolent;
    const double sign = label == data::Label::kViolent ? 0.5 : -0.5;
    const double za = normal(rng);
    const double zv = spec.correlation * za + residual * normal(rng);
    audio.push_back({id, data::Modality::kAudio, sample(ua, sign * spec.audio_separation + za, rng)});
    video.push_back({id, data::Modality::kVideo, sample(uv, sign * spec.video_separation + zv, rng)});
    data::ClipEntry e;
    e.id = id;
    e.media_path = std::string("synthetic/") + id;
    e.label = label;
    e.duration_s = 2.0;
    entries.push_back(std::move(e));
  }
  return {data::ClipManifest(std::move(entries)),
          data::EmbeddingStore(data::Modality::kAudio, std::move(audio)),
          data::EmbeddingStore(data::Modality::kVideo, std::move(video))};
}

DataPaths write_synthetic(const SyntheticSpec& spec, const std::filesystem::path& dir) {
  const auto d = make_synthetic(spec);
  std::filesystem::create_directories(dir);
  DataPaths p{dir / "manifest.tsv", dir / "audio.avfe", dir / "video.avfe"};
  data::save_manifest(p.manifest, d.manifest);
  data::write_embeddings(p.audio_embeddings, d.audio.records());
  data::write_embeddings(p.video_embeddings, d.video.records());
  return p;
}

ExperimentConfig synthetic_experiment_config(std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.seed = seed;
  cfg.run_count = 3;
  cfg.training.epochs = 60;
  return cfg;
}

}  // namespace avf::harness
