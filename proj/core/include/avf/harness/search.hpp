// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "avf/harness/config.hpp"
#include "avf/harness/dataset.hpp"
#include "avf/harness/metrics.hpp"

namespace avf::harness {

struct Trial {
  ExperimentConfig config;
  MetricsReport report;
};

struct SearchResult {
  std::size_t best_index = 0;
  ExperimentConfig best;
  std::vector<Trial> trials;
};

/// `budget` configs drawn uniformly (with replacement) from the discrete
/// space using a generator seeded from base.seed; each is trained once
/// (run_count = 1). The winner maximizes AVA, then minimizes AVL, then is
/// the earliest trial. Raises EmptySpace when no parameter is searched.
std::vector<ExperimentConfig> sample_trials(const ExperimentConfig& base, const SearchSpace& space,
                                            int budget);
SearchResult random_search(const ExperimentConfig& base, const SearchSpace& space, int budget,
                           const ExperimentData& data, int threads = 1);

/// Index of the winner under the rule above.
std::size_t best_trial(const std::vector<MetricsReport>& reports);

}  // namespace avf::harness
