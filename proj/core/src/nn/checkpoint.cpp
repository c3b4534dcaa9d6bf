// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/nn/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "avf/binary_io.hpp"
#include "avf/error.hpp"
#include "avf/nn/adam.hpp"

namespace avf::nn {

void validate(const TrainingConfig& cfg) {
  if (!(cfg.learning_rate > 0.0)) raise(ErrorCode::kInvalidArgument, "learning_rate must be > 0");
  if (cfg.batch_size < 1) raise(ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  if (cfg.epochs < 0) raise(ErrorCode::kInvalidArgument, "epochs must be >= 0");
  if (!(cfg.beta1 >= 0.0 && cfg.beta1 < 1.0) || !(cfg.beta2 >= 0.0 && cfg.beta2 < 1.0)) {
    raise(ErrorCode::kInvalidArgument, "Adam betas must lie in [0, 1)");
  }
  if (!(cfg.epsilon > 0.0)) raise(ErrorCode::kInvalidArgument, "epsilon must be > 0");
}

template <typename T>
void write_network(std::ostream& out, const Mlp<T>& net) {
  binary::put(out, static_cast<std::uint32_t>(net.layers().size()));
  for (const auto& l : net.layers()) {
    binary::put(out, static_cast<std::uint32_t>(l.in));
    binary::put(out, static_cast<std::uint32_t>(l.out));
    binary::put(out, static_cast<std::uint8_t>(l.activation));
    binary::put_f64(out, l.dropout_after);
  }
  for (const auto& l : net.layers()) {
    for (T w : l.weights) binary::put_f32(out, static_cast<float>(w));
    for (T b : l.bias) binary::put_f32(out, static_cast<float>(b));
  }
}

template <typename T>
Mlp<T> read_network(std::istream& in) {
  const auto n_layers = binary::get<std::uint32_t>(in, "layer count");
  if (n_layers == 0 || n_layers > 1024) raise(ErrorCode::kCorruptHeader, "bad layer count");
  std::vector<LayerSpec> specs;
  std::size_t input_dim = 0;
  std::size_t prev_out = 0;
  for (std::uint32_t k = 0; k < n_layers; ++k) {
    const auto lin = binary::get<std::uint32_t>(in, "layer in");
    const auto lout = binary::get<std::uint32_t>(in, "layer out");
    const auto act = binary::get<std::uint8_t>(in, "activation");
    const double dropout = binary::get_f64(in, "dropout");
    if (act > 1 || !(dropout >= 0.0 && dropout < 1.0) || lin == 0 || lout == 0 || (k > 0 && lin != prev_out)) {
      raise(ErrorCode::kCorruptHeader, "inconsistent layer header");
    }
    if (k == 0) input_dim = lin;
    prev_out = lout;
    specs.push_back({lout, static_cast<Activation>(act), dropout});
  }
  Mlp<T> net(input_dim, specs);
  for (auto& l : net.layers()) {
    for (auto& w : l.weights) w = static_cast<T>(binary::get_f32(in, "weights"));
    for (auto& b : l.bias) b = static_cast<T>(binary::get_f32(in, "bias"));
  }
  net.touch();
  return net;
}

template void write_network<float>(std::ostream&, const Mlp<float>&);
template void write_network<double>(std::ostream&, const Mlp<double>&);
template Mlp<float> read_network<float>(std::istream&);
template Mlp<double> read_network<double>(std::istream&);

void save_mlp(const std::filesystem::path& path, const Mlp<float>& net) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::kIo, "cannot write " + path.string());
  binary::put_bytes(out, {kMlpMagic, 4});
  binary::put(out, kMlpVersion);
  write_network(out, net);
}

Mlp<float> load_mlp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::kIo, "cannot open " + path.string());
  char magic[4];
  binary::get_bytes(in, magic, 4, "checkpoint magic");
  if (std::memcmp(magic, kMlpMagic, 4) != 0) raise(ErrorCode::kCorruptHeader, "not an MLP checkpoint");
  if (binary::get<std::uint32_t>(in, "version") != kMlpVersion) {
    raise(ErrorCode::kCorruptHeader, "unsupported checkpoint version");
  }
  return read_network<float>(in);
}

}  // namespace avf::nn
