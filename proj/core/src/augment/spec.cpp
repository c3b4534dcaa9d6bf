// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/augment/spec.hpp"

#include <algorithm>
#include <json.hpp>

#include "avf/error.hpp"

namespace avf::augment {

namespace {

using nlohmann::json;

ParamRange interval(double lo, double hi) { return {lo, hi, {}}; }
ParamRange discrete(std::vector<double> choices) { return {0.0, 0.0, std::move(choices)}; }

json to_json(const AugmentationSpec& spec) {
  json ops = json::array();
  for (const auto& op : spec.ops) {
    json o = {{"op", op.name}};
    for (const auto& [k, v] : op.params) o[k] = v;
    ops.push_back(std::move(o));
  }
  return {{"seed", spec.seed}, {"ops", std::move(ops)}};
}

AugmentationSpec from_json(const json& j, Modality modality) {
  AugmentationSpec spec;
  spec.modality = modality;
  spec.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& o : j.at("ops")) {
    OpApplication op;
    for (const auto& [k, v] : o.items()) {
      if (k == "op") {
        op.name = v.get<std::string>();
      } else {
        op.params[k] = v.get<double>();
      }
    }
    spec.ops.push_back(std::move(op));
  }
  return spec;
}

}  // namespace

double OpApplication::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) {
    raise(ErrorCode::kParamOutOfRange, "op '" + name + "' is missing parameter '" + key + "'");
  }
  return it->second;
}

bool ParamRange::contains(double v) const {
  if (!choices.empty()) return std::find(choices.begin(), choices.end(), v) != choices.end();
  return v >= lo && v <= hi;
}

double ParamRange::sample(Rng& rng) const {
  if (!choices.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
    return choices[pick(rng)];
  }
  if (lo == hi) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

OpRanges default_video_ranges() {
  return {
      {"color_jitter",
       {{"gain_r", interval(0.8, 1.2)}, {"gain_g", interval(0.8, 1.2)},
        {"gain_b", interval(0.8, 1.2)}}},
      {"rotation", {{"angle_deg", interval(-15.0, 15.0)}}},
      {"additive_noise", {{"sigma", interval(0.0, 0.05)}}},
      {"flip", {{"axis", discrete({0.0, 1.0})}}},
      {"gaussian_blur", {{"kernel", discrete({3.0, 5.0})}, {"sigma", interval(0.5, 1.5)}}},
      {"median_blur", {{"kernel", discrete({3.0})}}},
      {"brightness_contrast", {{"alpha", interval(0.8, 1.2)}, {"beta", interval(-0.1, 0.1)}}},
  };
}

OpRanges default_audio_ranges() {
  return {
      {"pitch_shift", {{"semitones", interval(-2.0, 2.0)}}},
      {"additive_noise", {{"snr_db", interval(20.0, 40.0)}}},
      {"volume", {{"gain", interval(0.5, 1.5)}}},
      {"frequency_filter",
       {{"mode", discrete({0.0, 1.0})}, {"cutoff_hz", interval(200.0, 6000.0)}}},
  };
}

const OpRanges& default_ranges(Modality m) {
  static const OpRanges video = default_video_ranges();
  static const OpRanges audio = default_audio_ranges();
  return m == Modality::kAudio ? audio : video;
}

void validate(const AugmentationSpec& spec, const OpRanges& ranges) {
  for (const auto& op : spec.ops) {
    auto it = ranges.find(op.name);
    if (it == ranges.end()) {
      raise(ErrorCode::kUnknownOp, "unknown " + std::string(data::to_string(spec.modality)) +
                                       " op '" + op.name + "'");
    }
    for (const auto& [key, value] : op.params) {
      if (!it->second.contains(key)) {
        raise(ErrorCode::kParamOutOfRange, "op '" + op.name + "' has no parameter '" + key + "'");
      }
    }
    for (const auto& [key, range] : it->second) {
      const double v = op.param(key);
      if (!range.contains(v)) {
        raise(ErrorCode::kParamOutOfRange,
              "op '" + op.name + "' parameter '" + key + "' = " + std::to_string(v) +
                  " is out of range");
      }
    }
  }
}

AugmentationSpec sample_spec(Modality modality, const AugmentationPolicy& policy, Rng& rng) {
  const OpRanges& ranges = policy.ranges(modality);
  if (policy.min_ops < 0 || policy.max_ops < policy.min_ops) {
    raise(ErrorCode::kInvalidArgument, "need 0 <= min_ops <= max_ops");
  }
  AugmentationSpec spec;
  spec.modality = modality;
  spec.seed = rng();

  std::vector<std::string> names;
  for (const auto& [name, params] : ranges) names.push_back(name);
  const int hi = std::min<int>(policy.max_ops, static_cast<int>(names.size()));
  const int lo = std::min(policy.min_ops, hi);
  const int count = std::uniform_int_distribution<int>(lo, hi)(rng);
  std::shuffle(names.begin(), names.end(), rng);
  for (int i = 0; i < count; ++i) {
    OpApplication op;
    op.name = names[static_cast<std::size_t>(i)];
    for (const auto& [key, range] : ranges.at(op.name)) op.params[key] = range.sample(rng);
    spec.ops.push_back(std::move(op));
  }
  return spec;
}

std::string serialize(const ClipAugmentation& aug) {
  return json{{"audio", to_json(aug.audio)}, {"video", to_json(aug.video)}}.dump();
}

ClipAugmentation parse_clip_augmentation(const std::string& text) {
  try {
    const json j = json::parse(text);
    return {from_json(j.at("audio"), Modality::kAudio), from_json(j.at("video"), Modality::kVideo)};
  } catch (const json::exception& e) {
    raise(ErrorCode::kParseError, std::string("bad augmentation spec: ") + e.what());
  }
}

}  // namespace avf::augment
