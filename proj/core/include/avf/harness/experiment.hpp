// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "avf/fusion/head.hpp"
#include "avf/harness/config.hpp"
#include "avf/harness/dataset.hpp"
#include "avf/harness/metrics.hpp"
#include "avf/nn/train.hpp"

namespace avf::harness {

/// Seeds of run r: a fresh random split and a fresh training stream
/// (initialization, shuffling, dropout).
std::uint64_t split_seed(std::uint64_t seed, int run);
std::uint64_t train_seed(std::uint64_t seed, int run);

struct TrainedRun {
  fusion::FusionHead<float> head;
  std::vector<nn::EpochStats> history;
  RunMetrics metrics;
};

/// Trains one head on run r's training split and scores it in eval mode on
/// both splits (ATA/ATL use the final model on the training set).
TrainedRun train_run(const ExperimentConfig& cfg, const ExperimentData& data,
                     fusion::Strategy strategy, int run);

/// cfg.run_count independent runs of cfg.head.strategy.
MetricsReport run_experiment(const ExperimentConfig& cfg, const ExperimentData& data,
                             int threads = 1);

/// One report per strategy, in kAllStrategies order, all on the same splits
/// and seeds.
std::vector<MetricsReport> compare_strategies(const ExperimentConfig& cfg,
                                              const ExperimentData& data, int threads = 1);

/// Runs fn(0..n-1) on up to `threads` workers. Each index runs exactly once;
/// the first exception by index is rethrown after all workers finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace avf::harness
