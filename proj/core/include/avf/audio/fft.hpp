// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <memory>
#include <span>

namespace avf::audio {

/// Real-input FFT of fixed size n (FFTW-backed). Not copyable; one instance
/// per thread.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const noexcept;

  /// in.size() == n; out.size() == n/2 + 1. Unnormalized.
  void forward(std::span<const double> in, std::span<std::complex<double>> out);
  /// in.size() == n/2 + 1; out.size() == n. Unnormalized (scaled by n).
  void inverse(std::span<const std::complex<double>> in, std::span<double> out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace avf::audio
