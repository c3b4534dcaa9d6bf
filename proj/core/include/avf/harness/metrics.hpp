// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "avf/error.hpp"
#include "avf/fusion/head.hpp"
#include "avf/nn/loss.hpp"
#include "avf/nn/train.hpp"

namespace avf::harness {

/// confusion[true][predicted]
using Confusion = std::array<std::array<std::size_t, 2>, 2>;

struct EvalResult {
  double accuracy = 0.0;   // percent
  double mean_loss = 0.0;  // mean categorical cross-entropy
  Confusion confusion{};
  std::size_t count = 0;
};

/// Accuracy/loss/confusion from per-clip outcomes. Raises EmptyEvalSet.
EvalResult summarize(std::span<const int> truth, std::span<const int> predicted,
                     std::span<const double> losses);

/// Eval-mode pass over a labelled set. Raises EmptyEvalSet.
template <typename T>
EvalResult evaluate(const fusion::FusionHead<T>& head,
                    std::span<const nn::LabeledExample<fusion::FusionInput<T>>> set,
                    std::vector<fusion::Prediction>* predictions = nullptr,
                    std::span<const std::string> ids = {}) {
  if (set.empty()) raise(ErrorCode::kEmptyEvalSet, "evaluation set is empty");
  std::vector<int> truth;
  std::vector<int> predicted;
  std::vector<double> losses;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& ex = set[i];
    const auto logits = head.forward(ex.input, nn::Mode::kEval, nullptr, nullptr);
    const auto loss = nn::softmax_ce_loss<T>(logits, static_cast<std::size_t>(ex.label));
    const auto p = nn::softmax<T>(logits);
    const std::array<double, 2> probs{static_cast<double>(p[0]), static_cast<double>(p[1])};
    const auto label = fusion::predicted_label(probs);
    truth.push_back(ex.label);
    predicted.push_back(data::class_index(label));
    losses.push_back(static_cast<double>(loss.loss));
    if (predictions != nullptr) {
      predictions->push_back({i < ids.size() ? ids[i] : std::string(), probs, label});
    }
  }
  return summarize(truth, predicted, losses);
}

struct RunMetrics {
  int run = 0;
  std::uint64_t split_seed = 0;
  std::uint64_t train_seed = 0;
  double train_accuracy = 0.0;
  double train_loss = 0.0;
  double val_accuracy = 0.0;
  double val_loss = 0.0;
  Confusion confusion{};  // validation set
};

/// ATA/ATL/AVA/AVL: arithmetic means over runs of the final-model training
/// and validation accuracy/loss. The confusion matrix sums the runs.
struct MetricsReport {
  fusion::Strategy strategy = fusion::Strategy::kHybrid;
  double ata = 0.0;
  double atl = 0.0;
  double ava = 0.0;
  double avl = 0.0;
  std::vector<RunMetrics> per_run;
  Confusion confusion{};
};

/// Raises InvalidArgument when there are no runs.
MetricsReport aggregate(fusion::Strategy strategy, std::vector<RunMetrics> runs);

}  // namespace avf::harness
