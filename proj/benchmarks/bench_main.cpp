// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "avf/audio/logmel.hpp"
#include "avf/audio/resample.hpp"
#include "avf/fusion/head.hpp"
#include "avf/nn/train.hpp"

namespace {

std::vector<double> noise(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

void BM_LogMel(benchmark::State& state) {
  const avf::audio::Waveform w{noise(static_cast<std::size_t>(state.range(0))), 16000, 1};
  for (auto _ : state) benchmark::DoNotOptimize(avf::audio::compute_log_mel(w));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogMel)->Arg(16000)->Arg(160000);

void BM_Resample48k(benchmark::State& state) {
  const avf::audio::Waveform w{noise(48000), 48000, 1};
  for (auto _ : state) benchmark::DoNotOptimize(avf::audio::resample_to_16k_mono(w));
}
BENCHMARK(BM_Resample48k);

void BM_HeadEpoch(benchmark::State& state) {
  avf::fusion::HeadConfig cfg;
  cfg.strategy = static_cast<avf::fusion::Strategy>(state.range(0));
  avf::fusion::FusionHead<float> head(cfg);
  avf::Rng rng(3);
  head.init(rng);
  std::vector<avf::nn::LabeledExample<avf::fusion::FusionInput<float>>> data;
  const auto a = noise(cfg.audio_dim), v = noise(cfg.video_dim);
  for (int i = 0; i < 70; ++i) {
    data.push_back({{{a.begin(), a.end()}, {v.begin(), v.end()}}, i % 2});
  }
  avf::nn::TrainingConfig tc;
  tc.epochs = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(avf::nn::train_epochs(
        head, std::span<const avf::nn::LabeledExample<avf::fusion::FusionInput<float>>>(data), tc));
  }
  state.SetItemsProcessed(state.iterations() * 70);
}
BENCHMARK(BM_HeadEpoch)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
