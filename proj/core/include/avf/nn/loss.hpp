// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "avf/error.hpp"

namespace avf::nn {

/// Max-subtracted softmax.
template <typename T>
std::vector<T> softmax(std::span<const T> logits) {
  std::vector<T> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const T m = *std::max_element(p.begin(), p.end());
  T sum = 0;
  for (auto& v : p) {
    v = std::exp(v - m);
    sum += v;
  }
  for (auto& v : p) v /= sum;
  return p;
}

template <typename T>
struct LossResult {
  T loss;
  std::vector<T> grad_logits;
};

/// Categorical cross-entropy on softmax(logits):
/// loss = -ln softmax(logits)[true], grad = softmax(logits) - one_hot.
template <typename T>
LossResult<T> softmax_ce_loss(std::span<const T> logits, std::span<const T> one_hot) {
  if (logits.size() != one_hot.size() || logits.empty()) {
    raise(ErrorCode::kInvalidOneHot, "one-hot vector does not match the logits");
  }
  std::size_t hot = logits.size();
  for (std::size_t k = 0; k < one_hot.size(); ++k) {
    if (one_hot[k] == T{1}) {
      if (hot != logits.size()) raise(ErrorCode::kInvalidOneHot, "more than one hot entry");
      hot = k;
    } else if (one_hot[k] != T{0}) {
      raise(ErrorCode::kInvalidOneHot, "one-hot entries must be 0 or 1");
    }
  }
  if (hot == logits.size()) raise(ErrorCode::kInvalidOneHot, "no hot entry");

  const T m = *std::max_element(logits.begin(), logits.end());
  T sum = 0;
  for (T z : logits) sum += std::exp(z - m);
  const T log_sum = std::log(sum);
  LossResult<T> r;
  r.loss = -(logits[hot] - m - log_sum);
  r.grad_logits.resize(logits.size());
  for (std::size_t k = 0; k < logits.size(); ++k) {
    r.grad_logits[k] = std::exp(logits[k] - m - log_sum) - one_hot[k];
  }
  return r;
}

/// Convenience overload taking the true class index.
template <typename T>
LossResult<T> softmax_ce_loss(std::span<const T> logits, std::size_t true_class) {
  std::vector<T> one_hot(logits.size(), T{0});
  if (true_class >= one_hot.size()) raise(ErrorCode::kInvalidOneHot, "class index out of range");
  one_hot[true_class] = T{1};
  return softmax_ce_loss<T>(logits, one_hot);
}

/// dLoss/dlogits given dLoss/dp for p = softmax(logits):
/// g_z = p * (g_p - <g_p, p>).
template <typename T>
std::vector<T> softmax_backward(std::span<const T> p, std::span<const T> grad_p) {
  T inner = 0;
  for (std::size_t k = 0; k < p.size(); ++k) inner += grad_p[k] * p[k];
  std::vector<T> g(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) g[k] = p[k] * (grad_p[k] - inner);
  return g;
}

}  // namespace avf::nn
