// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/fusion/model_io.hpp"

#include <cstring>
#include <fstream>
#include <json.hpp>

#include "avf/binary_io.hpp"
#include "avf/error.hpp"
#include "avf/nn/checkpoint.hpp"

namespace avf::fusion {

namespace {

using nlohmann::json;

std::vector<std::size_t> hidden_widths(const nn::Mlp<float>& net) {
  std::vector<std::size_t> w;
  for (std::size_t k = 0; k + 1 < net.layers().size(); ++k) w.push_back(net.layers()[k].out);
  return w;
}

bool same_shape(const nn::Mlp<float>& a, const nn::Mlp<float>& b) {
  if (a.layers().size() != b.layers().size()) return false;
  for (std::size_t k = 0; k < a.layers().size(); ++k) {
    const auto& x = a.layers()[k];
    const auto& y = b.layers()[k];
    if (x.in != y.in || x.out != y.out || x.activation != y.activation ||
        x.dropout_after != y.dropout_after) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string head_config_to_json(const HeadConfig& cfg) {
  json j = {
      {"strategy", std::string(to_string(cfg.strategy))},
      {"audio_dim", cfg.audio_dim},
      {"video_dim", cfg.video_dim},
      {"intermediate_hidden", cfg.intermediate_hidden},
      {"branch_hidden", cfg.branch_hidden},
      {"combiner_hidden", cfg.combiner_hidden},
      {"unimodal_hidden", cfg.unimodal_hidden},
      {"dropout", cfg.dropout},
  };
  return j.dump(2);
}

HeadConfig parse_head_config(std::string_view text) {
  HeadConfig cfg;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) raise(ErrorCode::kParseError, "model config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "strategy") {
        const auto s = parse_strategy(value.get<std::string>());
        if (!s) raise(ErrorCode::kParseError, "unknown strategy " + value.dump());
        cfg.strategy = *s;
      } else if (key == "audio_dim") {
        cfg.audio_dim = value.get<std::size_t>();
      } else if (key == "video_dim") {
        cfg.video_dim = value.get<std::size_t>();
      } else if (key == "intermediate_hidden") {
        cfg.intermediate_hidden = value.get<std::vector<std::size_t>>();
      } else if (key == "branch_hidden") {
        cfg.branch_hidden = value.get<std::vector<std::size_t>>();
      } else if (key == "combiner_hidden") {
        cfg.combiner_hidden = value.get<std::vector<std::size_t>>();
      } else if (key == "unimodal_hidden") {
        cfg.unimodal_hidden = value.get<std::vector<std::size_t>>();
      } else if (key == "dropout") {
        cfg.dropout = value.get<double>();
      } else {
        raise(ErrorCode::kParseError, "unknown model config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    raise(ErrorCode::kParseError, std::string("model config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

void write_checkpoint(std::ostream& out, const FusionHead<float>& head) {
  const auto& cfg = head.config();
  binary::put_bytes(out, {kCheckpointMagic, 4});
  binary::put(out, kCheckpointVersion);
  binary::put(out, static_cast<std::uint8_t>(cfg.strategy));
  binary::put(out, static_cast<std::uint32_t>(cfg.audio_dim));
  binary::put(out, static_cast<std::uint32_t>(cfg.video_dim));
  binary::put(out, static_cast<std::uint32_t>(head.nets().size()));
  for (const auto& net : head.nets()) nn::write_network(out, net);
}

FusionHead<float> read_checkpoint(std::istream& in) {
  char magic[4];
  binary::get_bytes(in, magic, 4, "checkpoint magic");
  if (std::memcmp(magic, kCheckpointMagic, 4) != 0) {
    raise(ErrorCode::kCorruptHeader, "not a fusion checkpoint");
  }
  if (binary::get<std::uint32_t>(in, "version") != kCheckpointVersion) {
    raise(ErrorCode::kCorruptHeader, "unsupported checkpoint version");
  }
  const auto strategy_byte = binary::get<std::uint8_t>(in, "strategy");
  if (strategy_byte > static_cast<std::uint8_t>(Strategy::kAudioOnly)) {
    raise(ErrorCode::kCorruptHeader, "unknown strategy tag");
  }
  HeadConfig cfg;
  cfg.strategy = static_cast<Strategy>(strategy_byte);
  cfg.audio_dim = binary::get<std::uint32_t>(in, "audio dim");
  cfg.video_dim = binary::get<std::uint32_t>(in, "video dim");
  const auto n_nets = binary::get<std::uint32_t>(in, "net count");
  const auto roles = net_roles(cfg.strategy);
  if (n_nets != roles.size()) raise(ErrorCode::kCorruptHeader, "net count does not match strategy");

  std::vector<nn::Mlp<float>> nets;
  for (std::uint32_t k = 0; k < n_nets; ++k) nets.push_back(nn::read_network<float>(in));

  const bool unimodal = roles.size() == 1 && roles[0] != NetRole::kJoint;
  bool dropout_seen = false;
  for (std::size_t k = 0; k < roles.size(); ++k) {
    const auto widths = hidden_widths(nets[k]);
    switch (roles[k]) {
      case NetRole::kAudio:
      case NetRole::kVideo:
        (unimodal ? cfg.unimodal_hidden : cfg.branch_hidden) = widths;
        break;
      case NetRole::kJoint: cfg.intermediate_hidden = widths; break;
      case NetRole::kCombiner: cfg.combiner_hidden = widths; break;
    }
    if (!dropout_seen && nets[k].layers().size() > 1) {
      cfg.dropout = nets[k].layers().front().dropout_after;
      dropout_seen = true;
    }
  }

  FusionHead<float> head(cfg);
  for (std::size_t k = 0; k < roles.size(); ++k) {
    if (!same_shape(head.nets()[k], nets[k])) {
      raise(ErrorCode::kCorruptHeader, "checkpoint networks do not form a valid head");
    }
    head.nets()[k] = std::move(nets[k]);
  }
  head.touch();
  return head;
}

void save_checkpoint(const std::filesystem::path& path, const FusionHead<float>& head) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::kIo, "cannot write " + path.string());
  write_checkpoint(out, head);
  if (!out) raise(ErrorCode::kIo, "failed writing " + path.string());
}

FusionHead<float> load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::kMissingArtifacts, "cannot open checkpoint " + path.string());
  return read_checkpoint(in);
}

}  // namespace avf::fusion
