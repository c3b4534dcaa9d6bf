// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/harness/config.hpp"

#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <sstream>

#include "avf/error.hpp"
#include "avf/fusion/model_io.hpp"

namespace avf::harness {

namespace {

using nlohmann::json;
using Handlers = std::map<std::string, std::function<void(const json&)>, std::less<>>;

void apply(const json& j, std::string_view section, const Handlers& handlers) {
  if (!j.is_object()) raise(ErrorCode::kParseError, std::string(section) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    const auto it = handlers.find(key);
    if (it == handlers.end()) {
      raise(ErrorCode::kParseError, "unknown key '" + key + "' in " + std::string(section));
    }
    it->second(value);
  }
}

template <typename V>
std::function<void(const json&)> into(V& target) {
  return [&target](const json& v) { target = v.get<V>(); };
}

std::function<void(const json&)> into_path(std::filesystem::path& target,
                                           const std::filesystem::path& base) {
  return [&target, base](const json& v) {
    std::filesystem::path p = v.get<std::string>();
    target = p.is_relative() && !base.empty() && !p.empty() ? base / p : p;
  };
}

}  // namespace

bool SearchSpace::empty() const {
  return dropout.empty() && learning_rate.empty() && batch_size.empty() &&
         intermediate_hidden.empty() && branch_hidden.empty() && combiner_hidden.empty();
}

std::size_t SearchSpace::point_count() const {
  std::size_t n = 1;
  for (std::size_t k : {dropout.size(), learning_rate.size(), batch_size.size(),
                        intermediate_hidden.size(), branch_hidden.size(), combiner_hidden.size()}) {
    if (k > 0) n *= k;
  }
  return n;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.run_count < 1) raise(ErrorCode::kInvalidArgument, "run_count must be >= 1");
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
    raise(ErrorCode::kInvalidArgument, "train_fraction must lie in (0, 1)");
  }
  fusion::validate(cfg.head);
  nn::validate(cfg.training);
  if (cfg.augmentation.copies_per_clip < 0 || cfg.augmentation.min_ops < 1 ||
      cfg.augmentation.max_ops < cfg.augmentation.min_ops) {
    raise(ErrorCode::kInvalidArgument, "bad augmentation policy");
  }
  for (const auto& kind : {cfg.encoders.audio, cfg.encoders.video}) {
    if (kind != "toy" && kind != "file") {
      raise(ErrorCode::kInvalidArgument, "encoder must be 'toy' or 'file', got '" + kind + "'");
    }
  }
  if (cfg.encoders.audio_dim == 0 || cfg.encoders.video_dim == 0) {
    raise(ErrorCode::kInvalidArgument, "encoder dims must be positive");
  }
  if (cfg.search.budget < 1) raise(ErrorCode::kInvalidArgument, "search budget must be >= 1");
}

ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  try {
    const json root = json::parse(text);
    auto& t = cfg.training;
    auto& a = cfg.augmentation;
    auto& s = cfg.search;
    apply(root, "config",
          {
              {"seed", into(cfg.seed)},
              {"run_count", into(cfg.run_count)},
              {"train_fraction", into(cfg.train_fraction)},
              {"head", [&](const json& v) { cfg.head = fusion::parse_head_config(v.dump()); }},
              {"training",
               [&](const json& v) {
                 apply(v, "training",
                       {{"learning_rate", into(t.learning_rate)},
                        {"batch_size", into(t.batch_size)},
                        {"beta1", into(t.beta1)},
                        {"beta2", into(t.beta2)},
                        {"epsilon", into(t.epsilon)},
                        {"epochs", into(t.epochs)}});
               }},
              {"augmentation",
               [&](const json& v) {
                 apply(v, "augmentation",
                       {{"copies_per_clip", into(a.copies_per_clip)},
                        {"min_ops", into(a.min_ops)},
                        {"max_ops", into(a.max_ops)}});
               }},
              {"encoders",
               [&](const json& v) {
                 apply(v, "encoders",
                       {{"audio", into(cfg.encoders.audio)},
                        {"video", into(cfg.encoders.video)},
                        {"audio_dim", into(cfg.encoders.audio_dim)},
                        {"video_dim", into(cfg.encoders.video_dim)}});
               }},
              {"data",
               [&](const json& v) {
                 apply(v, "data",
                       {{"manifest", into_path(cfg.data.manifest, base_dir)},
                        {"audio_embeddings", into_path(cfg.data.audio_embeddings, base_dir)},
                        {"video_embeddings", into_path(cfg.data.video_embeddings, base_dir)}});
               }},
              {"search",
               [&](const json& v) {
                 apply(v, "search",
                       {{"dropout", into(s.dropout)},
                        {"learning_rate", into(s.learning_rate)},
                        {"batch_size", into(s.batch_size)},
                        {"intermediate_hidden", into(s.intermediate_hidden)},
                        {"branch_hidden", into(s.branch_hidden)},
                        {"combiner_hidden", into(s.combiner_hidden)},
                        {"budget", into(s.budget)}});
               }},
          });
  } catch (const json::exception& e) {
    raise(ErrorCode::kParseError, std::string("config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::kIo, "cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment_config(text.str(), path.parent_path());
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
  const auto& t = cfg.training;
  const auto& a = cfg.augmentation;
  const auto& s = cfg.search;
  json j = {
      {"seed", cfg.seed},
      {"run_count", cfg.run_count},
      {"train_fraction", cfg.train_fraction},
      {"head", json::parse(fusion::head_config_to_json(cfg.head))},
      {"training",
       {{"learning_rate", t.learning_rate},
        {"batch_size", t.batch_size},
        {"beta1", t.beta1},
        {"beta2", t.beta2},
        {"epsilon", t.epsilon},
        {"epochs", t.epochs}}},
      {"augmentation",
       {{"copies_per_clip", a.copies_per_clip}, {"min_ops", a.min_ops}, {"max_ops", a.max_ops}}},
      {"encoders",
       {{"audio", cfg.encoders.audio},
        {"video", cfg.encoders.video},
        {"audio_dim", cfg.encoders.audio_dim},
        {"video_dim", cfg.encoders.video_dim}}},
      {"data",
       {{"manifest", cfg.data.manifest.string()},
        {"audio_embeddings", cfg.data.audio_embeddings.string()},
        {"video_embeddings", cfg.data.video_embeddings.string()}}},
      {"search",
       {{"dropout", s.dropout},
        {"learning_rate", s.learning_rate},
        {"batch_size", s.batch_size},
        {"intermediate_hidden", s.intermediate_hidden},
        {"branch_hidden", s.branch_hidden},
        {"combiner_hidden", s.combiner_hidden},
        {"budget", s.budget}}},
  };
  return j.dump(2);
}

}  // namespace avf::harness
