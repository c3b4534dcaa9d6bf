// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "avf/data/split.hpp"
#include "avf/error.hpp"
#include "avf/seed.hpp"

namespace avf::harness {

std::uint64_t split_seed(std::uint64_t seed, int run) {
  return derive_seed(seed, "split", static_cast<std::uint64_t>(run));
}

std::uint64_t train_seed(std::uint64_t seed, int run) {
  return derive_seed(seed, "train", static_cast<std::uint64_t>(run));
}

TrainedRun train_run(const ExperimentConfig& cfg, const ExperimentData& data,
                     fusion::Strategy strategy, int run) {
  if (data.manifest.empty()) raise(ErrorCode::kMissingArtifacts, "manifest is empty");
  const auto sseed = split_seed(cfg.seed, run);
  const auto tseed = train_seed(cfg.seed, run);
  const auto split = data::random_split(data.manifest, sseed, cfg.train_fraction);
  const auto ids = split_ids(data.manifest, split);
  const auto train = assemble(data, ids.train, strategy);
  const auto val = assemble(data, ids.validation, strategy);

  auto head_cfg = resolve_dims(cfg.head, data);
  head_cfg.strategy = strategy;
  TrainedRun out{fusion::FusionHead<float>(head_cfg), {}, {}};
  Rng init_rng(derive_seed(tseed, 0));
  out.head.init(init_rng);

  auto training = cfg.training;
  training.seed = derive_seed(tseed, 1);
  out.history = nn::train_epochs(out.head, std::span<const Example>(train.examples), training);

  const auto on_train = evaluate(out.head, std::span<const Example>(train.examples));
  const auto on_val = evaluate(out.head, std::span<const Example>(val.examples));
  out.metrics = {run,
                 sseed,
                 tseed,
                 on_train.accuracy,
                 on_train.mean_loss,
                 on_val.accuracy,
                 on_val.mean_loss,
                 on_val.confusion};
  return out;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  std::vector<std::exception_ptr> errors(n);
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

MetricsReport run_experiment(const ExperimentConfig& cfg, const ExperimentData& data,
                             int threads) {
  validate(cfg);
  std::vector<RunMetrics> runs(static_cast<std::size_t>(cfg.run_count));
  parallel_for(runs.size(), threads, [&](std::size_t r) {
    runs[r] = train_run(cfg, data, cfg.head.strategy, static_cast<int>(r)).metrics;
  });
  return aggregate(cfg.head.strategy, std::move(runs));
}

std::vector<MetricsReport> compare_strategies(const ExperimentConfig& cfg,
                                              const ExperimentData& data, int threads) {
  validate(cfg);
  const auto n_runs = static_cast<std::size_t>(cfg.run_count);
  const auto n_strategies = fusion::kAllStrategies.size();
  std::vector<RunMetrics> slots(n_strategies * n_runs);
  parallel_for(slots.size(), threads, [&](std::size_t k) {
    const auto strategy = fusion::kAllStrategies[k / n_runs];
    slots[k] = train_run(cfg, data, strategy, static_cast<int>(k % n_runs)).metrics;
  });
  std::vector<MetricsReport> reports;
  for (std::size_t s = 0; s < n_strategies; ++s) {
    std::vector<RunMetrics> runs(slots.begin() + static_cast<std::ptrdiff_t>(s * n_runs),
                                 slots.begin() + static_cast<std::ptrdiff_t>((s + 1) * n_runs));
    reports.push_back(aggregate(fusion::kAllStrategies[s], std::move(runs)));
  }
  return reports;
}

}  // namespace avf::harness
