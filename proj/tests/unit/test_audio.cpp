// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "avf/audio/logmel.hpp"
#include "avf/audio/logmel_file.hpp"
#include "avf/audio/resample.hpp"
#include "avf/audio/wav.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace avf::audio {
namespace {

using fixture::code_of;

Waveform mono16k(std::vector<double> x) { return {std::move(x), kTargetSampleRate, 1}; }

std::vector<double> sine(double hz, int rate, std::size_t n, double amp = 1.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = amp * std::sin(2.0 * std::numbers::pi * hz * i / rate);
  return x;
}

TEST(ShapeLaw, FrameAndExampleCounts) {
  for (std::size_t n : {400u, 401u, 559u, 560u, 8000u, 15599u, 16000u, 80000u, 123457u}) {
    const std::size_t f = (n - 400) / 160 + 1;
    EXPECT_EQ(stft_frame_count(n), f) << n;
    EXPECT_EQ(example_count(n), f / 96) << n;
  }
  EXPECT_EQ(stft_frame_count(16000), 98u);
  EXPECT_EQ(example_count(16000), 1u);
  EXPECT_EQ(stft_frame_count(80000), 498u);
  EXPECT_EQ(example_count(80000), 5u);
  EXPECT_EQ(example_count(8000), 0u);
  EXPECT_EQ(stft_frame_count(399), 0u);
}

TEST(ShapeLaw, PipelineMatchesCounts) {
  for (std::size_t n : {8000u, 16000u, 80000u}) {
    const auto w = mono16k(fixture::noise(n, n));
    EXPECT_EQ(compute_log_mel(w).rows(), stft_frame_count(n));
    EXPECT_EQ(extract_examples(w, "c").size(), example_count(n));
  }
}

TEST(Resample, IdentityAt16k) {
  const auto w = mono16k(fixture::noise(1000, 1));
  EXPECT_EQ(resample_to_16k_mono(w), w);
}

TEST(Resample, SineFrom48k) {
  Waveform w{sine(440.0, 48000, 48000), 48000, 1};
  const auto out = resample_to_16k_mono(w);
  ASSERT_EQ(out.samples.size(), 16000u);
  EXPECT_EQ(out.sample_rate_hz, 16000);
  const auto ref = sine(440.0, 16000, 16000);
  double worst = 0.0;
  for (std::size_t i = 200; i < 15800; ++i) worst = std::max(worst, std::abs(out.samples[i] - ref[i]));
  EXPECT_LT(worst, 1e-3);
}

TEST(Resample, OutputLengthRule) {
  for (int rate : {8000, 11025, 22050, 44100, 48000}) {
    for (std::size_t n : {1u, 37u, 1000u, 4410u}) {
      Waveform w{fixture::noise(n, n + rate), rate, 1};
      const auto out = resample_to_16k_mono(w);
      EXPECT_EQ(out.samples.size(),
                static_cast<std::size_t>(std::llround(static_cast<double>(n) * 16000 / rate)))
          << rate << " " << n;
    }
  }
}

TEST(Resample, AntiPhaseStereoCancels) {
  const auto left = fixture::noise(22050, 9);
  Waveform w{{}, 44100, 2};
  for (double v : left) {
    w.samples.push_back(v);
    w.samples.push_back(-v);
  }
  const auto out = resample_to_16k_mono(w);
  EXPECT_EQ(out.channels, 1);
  EXPECT_EQ(out.samples.size(), 8000u);
  for (double v : out.samples) ASSERT_EQ(v, 0.0);
}

TEST(Resample, Errors) {
  EXPECT_EQ(code_of([] { resample_to_16k_mono(Waveform{{}, 44100, 1}); }), ErrorCode::kEmptyInput);
  EXPECT_EQ(code_of([] { resample_to_16k_mono(Waveform{{0.0, 0.1}, 4000, 1}); }),
            ErrorCode::kUnsupportedRate);
}

TEST(Resample, ToLengthKeepsLowFrequencySine) {
  const auto x = sine(100.0, 16000, 16000);
  const auto y = resample_to_length(x, 17000);
  ASSERT_EQ(y.size(), 17000u);
  // Same waveform sampled 17/16 times as densely.
  double worst = 0.0;
  for (std::size_t i = 500; i < 16500; ++i) {
    worst = std::max(worst, std::abs(y[i] - std::sin(2.0 * std::numbers::pi * 100.0 * i / 17000.0)));
  }
  EXPECT_LT(worst, 1e-3);
}

TEST(Stft, ZeroInputZeroMagnitude) {
  const auto s = stft_magnitude(mono16k(std::vector<double>(16000, 0.0)));
  EXPECT_EQ(s.frames.rows(), 98u);
  EXPECT_EQ(s.frames.cols(), 257u);
  for (double v : s.frames.data()) ASSERT_EQ(v, 0.0);
}

TEST(Stft, SinePeakAndDirectDftOracle) {
  const auto x = sine(1000.0, 16000, 16000);
  const auto s = stft_magnitude(mono16k(x));
  for (std::size_t f = 0; f < s.frames.rows(); ++f) {
    const auto row = s.frames.row(f);
    const auto peak = std::max_element(row.begin(), row.end()) - row.begin();
    ASSERT_EQ(peak, 32);
    const auto ref = oracle::dft_magnitude(x.data() + f * 160);
    for (std::size_t k = 0; k < row.size(); ++k) ASSERT_NEAR(row[k], ref[k], 1e-4);
  }
}

TEST(Stft, Errors) {
  EXPECT_EQ(code_of([] { stft_magnitude(mono16k(std::vector<double>(399, 0.0))); }),
            ErrorCode::kTooShort);
  EXPECT_EQ(code_of([] { stft_magnitude(Waveform{std::vector<double>(1000), 8000, 1}); }),
            ErrorCode::kUnsupportedRate);
}

TEST(Hann, Periodic) {
  const auto w = periodic_hann(400);
  EXPECT_EQ(w[0], 0.0);
  EXPECT_NEAR(w[200], 1.0, 1e-15);
  for (int n = 1; n < 400; ++n) EXPECT_NEAR(w[n], w[400 - n], 1e-15);
}

TEST(Mel, FilterbankMatchesFormula) {
  const auto& w = mel_weight_matrix();
  const auto ref = oracle::mel_filters();
  ASSERT_EQ(w.rows(), 64u);
  ASSERT_EQ(w.cols(), 257u);
  for (std::size_t m = 0; m < 64; ++m) {
    for (std::size_t k = 0; k < 257; ++k) ASSERT_NEAR(w(m, k), ref(m, k), 1e-12) << m << "," << k;
  }
}

TEST(Mel, ZeroAndFlatSpectrum) {
  Spectrogram s;
  s.frames = Matrix(3, 257);
  const auto zero = mel_filterbank(s);
  for (double v : zero.data()) EXPECT_EQ(v, 0.0);
  std::fill(s.frames.data().begin(), s.frames.data().end(), 1.0);
  const auto out = mel_filterbank(s);
  const auto ref = oracle::mel_filters();
  for (std::size_t m = 0; m < 64; ++m) {
    double sum = 0.0;
    for (std::size_t k = 0; k < 257; ++k) sum += ref(m, k);
    EXPECT_NEAR(out(1, m), sum, 1e-6);
  }
}

TEST(Mel, SineLandsInNearestBand) {
  const auto mel = mel_filterbank(stft_magnitude(mono16k(sine(1000.0, 16000, 16000))));
  const auto centers = mel_center_frequencies();
  std::size_t nearest = 0;
  for (std::size_t m = 1; m < centers.size(); ++m) {
    if (std::abs(oracle::mel(centers[m]) - oracle::mel(1000.0)) <
        std::abs(oracle::mel(centers[nearest]) - oracle::mel(1000.0))) {
      nearest = m;
    }
  }
  const auto row = mel.row(10);
  EXPECT_EQ(static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin()),
            nearest);
}

TEST(Mel, ShapeMismatch) {
  Spectrogram s;
  s.frames = Matrix(2, 100);
  EXPECT_EQ(code_of([&] { mel_filterbank(s); }), ErrorCode::kShapeMismatch);
}

TEST(LogCompress, Values) {
  Matrix m(1, 2);
  m(0, 1) = 0.99;
  const auto out = log_compress(m);
  EXPECT_NEAR(out(0, 0), -4.605170185988091, 1e-12);
  EXPECT_NEAR(out(0, 1), 0.0, 1e-15);
  m(0, 0) = -1e-9;
  EXPECT_EQ(code_of([&] { log_compress(m); }), ErrorCode::kNegativeInput);
}

TEST(LogCompress, InverseRecoversInput) {
  Matrix m(7, 64);
  const auto r = fixture::noise(m.data().size(), 5, 10.0);
  for (std::size_t i = 0; i < r.size(); ++i) m.data()[i] = std::abs(r[i]);
  const auto out = log_compress(m);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_NEAR(std::exp(out.data()[i]) - 0.01, m.data()[i], 1e-9);
  }
}

TEST(Examples, Framing) {
  for (auto [frames, expected] : {std::pair{96u, 1u}, {98u, 1u}, {191u, 1u}, {192u, 2u}, {498u, 5u}}) {
    Matrix lm(frames, 64);
    for (std::size_t i = 0; i < lm.data().size(); ++i) lm.data()[i] = static_cast<double>(i);
    const auto ex = frame_examples(lm, "c");
    ASSERT_EQ(ex.size(), expected);
    for (std::size_t k = 0; k < ex.size(); ++k) {
      EXPECT_EQ(ex[k].patch.rows(), 96u);
      EXPECT_EQ(ex[k].patch(0, 0), lm(k * 96, 0));
      EXPECT_EQ(ex[k].patch(95, 63), lm(k * 96 + 95, 63));
      EXPECT_NEAR(ex[k].start_time_s, 0.96 * k, 1e-12);
      EXPECT_EQ(ex[k].source_clip_id, "c");
    }
  }
  EXPECT_EQ(code_of([] { frame_examples(Matrix(95, 64), "c"); }), ErrorCode::kTooShort);
  EXPECT_EQ(code_of([] { frame_examples(Matrix(100, 63), "c"); }), ErrorCode::kShapeMismatch);
}

TEST(Chain, MatchesOracleAndIsDeterministic) {
  const auto x = fixture::noise(24000, 77, 0.9);
  const auto got = compute_log_mel(mono16k(x));
  const auto ref = oracle::log_mel(x);
  ASSERT_EQ(got.rows(), ref.rows());
  for (std::size_t i = 0; i < ref.data().size(); ++i) ASSERT_NEAR(got.data()[i], ref.data()[i], 1e-4);
  const auto a = extract_examples(mono16k(x), "c");
  const auto b = extract_examples(mono16k(x), "c");
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].patch, b[k].patch);
}

TEST(Chain, LouderNeverDecreasesMelEnergy) {
  const auto x = fixture::noise(16000, 3);
  auto y = x;
  for (auto& v : y) v *= 1.7;
  const auto a = mel_filterbank(stft_magnitude(mono16k(x)));
  const auto b = mel_filterbank(stft_magnitude(mono16k(y)));
  for (std::size_t i = 0; i < a.data().size(); ++i) ASSERT_GE(b.data()[i], a.data()[i]);
}

TEST(Wav, RoundTrip) {
  Waveform w{{}, 22050, 2};
  for (int i = 0; i < 200; ++i) {
    w.samples.push_back(std::round(16384.0 * std::sin(i * 0.1)) / 32768.0);
    w.samples.push_back(-0.25);
  }
  std::stringstream pcm;
  write_wav(pcm, w);
  EXPECT_EQ(read_wav(pcm), w);
  std::stringstream flt;
  write_wav(flt, w, WavEncoding::kFloat32);
  const auto back = read_wav(flt);
  ASSERT_EQ(back.samples.size(), w.samples.size());
  for (std::size_t i = 0; i < w.samples.size(); ++i) EXPECT_FLOAT_EQ(back.samples[i], w.samples[i]);
}

TEST(LogMelFile, RoundTripAndHeader) {
  Matrix lm(98, 64);
  const auto r = fixture::noise(lm.data().size(), 8, 5.0);
  std::copy(r.begin(), r.end(), lm.data().begin());
  std::stringstream buf;
  write_logmel(buf, "clip_7", lm);
  const std::string bytes = buf.str();
  EXPECT_EQ(bytes.substr(0, 4), "AVLM");
  EXPECT_EQ(bytes.size(), 4 + 4 + 2 + 6 + 4 + 4 + 98 * 64 * 4u);
  const auto t = read_logmel(buf);
  EXPECT_EQ(t.clip_id, "clip_7");
  ASSERT_EQ(t.cells.rows(), 98u);
  for (std::size_t i = 0; i < r.size(); ++i) EXPECT_EQ(t.cells.data()[i], static_cast<float>(r[i]));
  std::string bad = bytes;
  bad[1] = 'X';
  std::istringstream in(bad);
  EXPECT_EQ(code_of([&] { read_logmel(in); }), ErrorCode::kCorruptHeader);
}

}  // namespace
}  // namespace avf::audio
