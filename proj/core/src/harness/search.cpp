// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/harness/search.hpp"

#include <random>

#include "avf/error.hpp"
#include "avf/harness/experiment.hpp"
#include "avf/seed.hpp"

namespace avf::harness {

namespace {

template <typename V>
void pick(const std::vector<V>& choices, V& target, Rng& rng) {
  if (choices.empty()) return;
  std::uniform_int_distribution<std::size_t> index(0, choices.size() - 1);
  target = choices[index(rng)];
}

}  // namespace

std::vector<ExperimentConfig> sample_trials(const ExperimentConfig& base, const SearchSpace& space,
                                            int budget) {
  if (space.empty()) raise(ErrorCode::kEmptySpace, "search space has no parameters");
  if (budget < 1) raise(ErrorCode::kInvalidArgument, "search budget must be >= 1");
  Rng rng(derive_seed(base.seed, "search"));
  std::vector<ExperimentConfig> trials;
  for (int k = 0; k < budget; ++k) {
    ExperimentConfig c = base;
    c.run_count = 1;
    pick(space.dropout, c.head.dropout, rng);
    pick(space.learning_rate, c.training.learning_rate, rng);
    pick(space.batch_size, c.training.batch_size, rng);
    pick(space.intermediate_hidden, c.head.intermediate_hidden, rng);
    pick(space.branch_hidden, c.head.branch_hidden, rng);
    pick(space.combiner_hidden, c.head.combiner_hidden, rng);
    validate(c);
    trials.push_back(std::move(c));
  }
  return trials;
}

std::size_t best_trial(const std::vector<MetricsReport>& reports) {
  if (reports.empty()) raise(ErrorCode::kInvalidArgument, "no trials");
  std::size_t best = 0;
  for (std::size_t k = 1; k < reports.size(); ++k) {
    const auto& r = reports[k];
    const auto& b = reports[best];
    if (r.ava > b.ava || (r.ava == b.ava && r.avl < b.avl)) best = k;
  }
  return best;
}

SearchResult random_search(const ExperimentConfig& base, const SearchSpace& space, int budget,
                           const ExperimentData& data, int threads) {
  auto configs = sample_trials(base, space, budget);
  std::vector<MetricsReport> reports(configs.size());
  parallel_for(configs.size(), threads,
               [&](std::size_t k) { reports[k] = run_experiment(configs[k], data, 1); });
  SearchResult out;
  out.best_index = best_trial(reports);
  out.best = configs[out.best_index];
  for (std::size_t k = 0; k < configs.size(); ++k) {
    out.trials.push_back({std::move(configs[k]), std::move(reports[k])});
  }
  return out;
}

}  // namespace avf::harness
