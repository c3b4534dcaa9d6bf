// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/harness/metrics.hpp"

namespace avf::harness {

EvalResult summarize(std::span<const int> truth, std::span<const int> predicted,
                     std::span<const double> losses) {
  if (truth.empty()) raise(ErrorCode::kEmptyEvalSet, "evaluation set is empty");
  if (predicted.size() != truth.size() || losses.size() != truth.size()) {
    raise(ErrorCode::kShapeMismatch, "outcome lists differ in length");
  }
  EvalResult r;
  r.count = truth.size();
  std::size_t correct = 0;
  double loss_sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0 || truth[i] > 1 || predicted[i] < 0 || predicted[i] > 1) {
      raise(ErrorCode::kInvalidArgument, "class index out of range");
    }
    r.confusion[static_cast<std::size_t>(truth[i])][static_cast<std::size_t>(predicted[i])] += 1;
    correct += truth[i] == predicted[i];
    loss_sum += losses[i];
  }
  const auto n = static_cast<double>(r.count);
  r.accuracy = 100.0 * static_cast<double>(correct) / n;
  r.mean_loss = loss_sum / n;
  return r;
}

MetricsReport aggregate(fusion::Strategy strategy, std::vector<RunMetrics> runs) {
  if (runs.empty()) raise(ErrorCode::kInvalidArgument, "no runs to aggregate");
  MetricsReport rep;
  rep.strategy = strategy;
  for (const auto& r : runs) {
    rep.ata += r.train_accuracy;
    rep.atl += r.train_loss;
    rep.ava += r.val_accuracy;
    rep.avl += r.val_loss;
    for (std::size_t t = 0; t < 2; ++t) {
      for (std::size_t p = 0; p < 2; ++p) rep.confusion[t][p] += r.confusion[t][p];
    }
  }
  const auto n = static_cast<double>(runs.size());
  rep.ata /= n;
  rep.atl /= n;
  rep.ava /= n;
  rep.avl /= n;
  rep.per_run = std::move(runs);
  return rep;
}

}  // namespace avf::harness
