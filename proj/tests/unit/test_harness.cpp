// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <json.hpp>

#include "avf/augment/expand.hpp"
#include "avf/harness/config.hpp"
#include "avf/harness/dataset.hpp"
#include "avf/harness/experiment.hpp"
#include "avf/harness/metrics.hpp"
#include "avf/harness/report.hpp"
#include "avf/harness/search.hpp"
#include "avf/harness/synthetic.hpp"
#include "support/fixtures.hpp"

namespace avf::harness {
namespace {

using fixture::code_of;
using fusion::Strategy;

// Audio-only head on a 1-d input: violent iff x > 0.5.
fusion::FusionHead<float> threshold_head() {
  fusion::HeadConfig cfg;
  cfg.strategy = Strategy::kAudioOnly;
  cfg.audio_dim = 1;
  cfg.video_dim = 1;
  cfg.unimodal_hidden = {1};
  fusion::FusionHead<float> head(cfg);
  auto& l = head.nets()[0].layers();
  l[0].weights = {1.0f};
  l[0].bias = {0.0f};
  l[1].weights = {0.0f, 1.0f};
  l[1].bias = {0.0f, -0.5f};
  return head;
}

Example example(float x, int label) { return {{{x}, {}}, label}; }

TEST(Evaluate, FieldTestArithmetic) {
  std::vector<Example> set;
  for (int i = 0; i < 54; ++i) {
    const int label = i % 2;
    const bool wrong = i == 7 || i == 30;
    set.push_back(example(static_cast<float>(wrong ? 1 - label : label), label));
  }
  const auto head = threshold_head();
  std::vector<fusion::Prediction> preds;
  std::vector<std::string> ids(54, "c");
  const auto r = evaluate(head, std::span<const Example>(set), &preds, ids);
  EXPECT_NEAR(r.accuracy, 100.0 * 52.0 / 54.0, 1e-9);
  EXPECT_NEAR(r.accuracy, 96.296296296296, 1e-9);
  EXPECT_EQ(r.count, 54u);
  EXPECT_EQ(preds.size(), 54u);
  EXPECT_EQ(r.confusion[0][1] + r.confusion[1][0], 2u);
}

TEST(Evaluate, AllCorrect) {
  std::vector<Example> set;
  for (int i = 0; i < 10; ++i) set.push_back(example(static_cast<float>(i % 2), i % 2));
  const auto r = evaluate(threshold_head(), std::span<const Example>(set));
  EXPECT_EQ(r.accuracy, 100.0);
  EXPECT_EQ(r.confusion[0][1], 0u);
  EXPECT_EQ(r.confusion[1][0], 0u);
  EXPECT_EQ(r.confusion[0][0] + r.confusion[1][1], 10u);
}

TEST(Evaluate, AlternatingMatchesTally) {
  std::vector<int> truth = {0, 1, 1, 0, 1, 0, 0, 0, 1, 1};
  std::vector<int> pred(10);
  std::vector<double> losses(10, 0.25);
  for (std::size_t i = 0; i < 10; ++i) pred[i] = i % 2 == 0 ? truth[i] : 1 - truth[i];
  const auto r = summarize(truth, pred, losses);
  EXPECT_EQ(r.accuracy, 50.0);
  EXPECT_EQ(r.mean_loss, 0.25);
  std::size_t tally[2][2] = {};
  for (std::size_t i = 0; i < 10; ++i) ++tally[truth[i]][pred[i]];
  for (int t = 0; t < 2; ++t) {
    for (int p = 0; p < 2; ++p) EXPECT_EQ(r.confusion[t][p], tally[t][p]);
  }
  EXPECT_EQ(code_of([] { summarize({}, {}, {}); }), ErrorCode::kEmptyEvalSet);
}

TEST(Aggregate, MeansOverRuns) {
  RunMetrics a, b;
  a.val_accuracy = 90.0;
  b.val_accuracy = 94.0;
  a.val_loss = 0.2;
  b.val_loss = 0.4;
  a.train_accuracy = 99.0;
  b.train_accuracy = 97.0;
  a.confusion = {{{5, 1}, {0, 4}}};
  b.confusion = {{{4, 0}, {1, 5}}};
  const auto r = aggregate(Strategy::kLate, {a, b});
  EXPECT_DOUBLE_EQ(r.ava, 92.0);
  EXPECT_DOUBLE_EQ(r.avl, 0.3);
  EXPECT_DOUBLE_EQ(r.ata, 98.0);
  EXPECT_EQ(r.confusion[0][0], 9u);
  EXPECT_EQ(r.per_run.size(), 2u);
  const auto one = aggregate(Strategy::kLate, {a});
  EXPECT_EQ(one.ava, 90.0);
}

SyntheticSpec small_spec() {
  SyntheticSpec s;
  s.clips = 120;
  s.audio_dim = 6;
  s.video_dim = 6;
  return s;
}

ExperimentConfig small_config() {
  auto cfg = synthetic_experiment_config(3);
  cfg.run_count = 2;
  cfg.training.epochs = 2;
  cfg.head.intermediate_hidden = {16, 8};
  cfg.head.branch_hidden = {8};
  cfg.head.combiner_hidden = {4};
  cfg.head.unimodal_hidden = {16, 8};
  return cfg;
}

TEST(Compare, RowsInOrderAndDeterministic) {
  const auto data = make_synthetic(small_spec());
  const auto cfg = small_config();
  const auto rows = compare_strategies(cfg, data, 1);
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(rows[i].strategy, fusion::kAllStrategies[i]);
    EXPECT_EQ(rows[i].per_run.size(), 2u);
    EXPECT_GE(rows[i].ava, 0.0);
    EXPECT_LE(rows[i].ava, 100.0);
  }
  const auto again = compare_strategies(cfg, data, 1);
  EXPECT_EQ(reports_to_json(rows), reports_to_json(again));
  EXPECT_EQ(reports_to_json(rows), reports_to_json(compare_strategies(cfg, data, 3)));
}

TEST(Experiment, RunSeedsDiffer) {
  EXPECT_NE(split_seed(1, 0), split_seed(1, 1));
  EXPECT_NE(train_seed(1, 0), split_seed(1, 0));
  const auto data = make_synthetic(small_spec());
  auto cfg = small_config();
  cfg.run_count = 1;
  const auto report = run_experiment(cfg, data);
  ASSERT_EQ(report.per_run.size(), 1u);
  EXPECT_EQ(report.ava, report.per_run[0].val_accuracy);
  const auto run = train_run(cfg, data, cfg.head.strategy, 0);
  EXPECT_EQ(run.history.size(), 2u);
  EXPECT_EQ(run.metrics.val_accuracy, report.per_run[0].val_accuracy);
}

TEST(Experiment, ValidationHoldsOriginalsOnly) {
  const auto base = fixture::manifest(40);
  augment::AugmentationPolicy policy;
  const auto expanded = augment::expand_dataset(base, policy, 1);
  const auto split = data::random_split(expanded, 5, 0.8);
  const auto ids = split_ids(expanded, split);
  EXPECT_EQ(ids.validation.size(), 8u);
  EXPECT_EQ(ids.train.size(), 32u * 3u);
  for (const auto& id : ids.validation) EXPECT_TRUE(expanded.at(id).is_original());
}

TEST(ParallelFor, CoversAllAndRethrows) {
  std::vector<int> hit(37, 0);
  parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) EXPECT_EQ(h, 1);
  EXPECT_EQ(code_of([] {
              parallel_for(10, 3, [](std::size_t i) {
                if (i >= 4) raise(ErrorCode::kInvalidArgument, "boom");
              });
            }),
            ErrorCode::kInvalidArgument);
}

TEST(Search, BudgetOneAndSinglePoint) {
  const auto base = small_config();
  SearchSpace space;
  const auto one = sample_trials(base, space, 1);
  ASSERT_EQ(one.size(), 1u);
  SearchSpace point;
  point.dropout = {0.2};
  point.learning_rate = {5e-4};
  point.batch_size = {9};
  EXPECT_EQ(point.point_count(), 1u);
  for (const auto& c : sample_trials(base, point, 6)) {
    EXPECT_EQ(c.head.dropout, 0.2);
    EXPECT_EQ(c.training.learning_rate, 5e-4);
    EXPECT_EQ(c.training.batch_size, 9u);
  }
  SearchSpace nothing;
  nothing.dropout.clear();
  nothing.learning_rate.clear();
  nothing.batch_size.clear();
  EXPECT_TRUE(nothing.empty());
  EXPECT_EQ(code_of([&] { sample_trials(base, nothing, 3); }), ErrorCode::kEmptySpace);
}

TEST(Search, DeterministicWinner) {
  const auto data = make_synthetic(small_spec());
  auto base = small_config();
  base.head.strategy = Strategy::kIntermediate;
  SearchSpace space;
  space.dropout = {0.3, 0.5};
  space.learning_rate = {1e-3};
  space.batch_size = {7};
  const auto a = random_search(base, space, 5, data);
  const auto b = random_search(base, space, 5, data);
  ASSERT_EQ(a.trials.size(), 5u);
  EXPECT_EQ(a.best_index, b.best_index);
  EXPECT_EQ(search_to_json(a), search_to_json(b));
  std::vector<MetricsReport> reports;
  for (const auto& t : a.trials) reports.push_back(t.report);
  EXPECT_EQ(best_trial(reports), a.best_index);
  for (const auto& t : a.trials) EXPECT_LE(t.report.ava, a.trials[a.best_index].report.ava);
}

TEST(Search, BestTrialTieBreaks) {
  std::vector<MetricsReport> r(3);
  r[0].ava = 90;
  r[0].avl = 0.3;
  r[1].ava = 90;
  r[1].avl = 0.2;
  r[2].ava = 90;
  r[2].avl = 0.2;
  EXPECT_EQ(best_trial(r), 1u);
  r[2].ava = 91;
  EXPECT_EQ(best_trial(r), 2u);
}

TEST(Data, MissingArtifacts) {
  DataPaths p{"/nonexistent/m.tsv", "/nonexistent/a.avfe", "/nonexistent/v.avfe"};
  EXPECT_EQ(code_of([&] { load_experiment_data(p); }), ErrorCode::kMissingArtifacts);
}

TEST(Data, AssembleAndResolveDims) {
  const auto data = make_synthetic(small_spec());
  const auto head = resolve_dims(fusion::HeadConfig{}, data);
  EXPECT_EQ(head.audio_dim, 6u);
  EXPECT_EQ(head.video_dim, 6u);
  const auto set = assemble(data, {"synth_00000", "synth_00001"}, Strategy::kAudioOnly);
  ASSERT_EQ(set.examples.size(), 2u);
  EXPECT_EQ(set.examples[1].label, 1);
  EXPECT_EQ(set.examples[0].input.audio.size(), 6u);
  EXPECT_TRUE(set.examples[0].input.video.empty());
}

TEST(Config, RoundTripAndStrictKeys) {
  auto cfg = small_config();
  cfg.data.manifest = "/data/m.tsv";
  const auto text = experiment_config_to_json(cfg);
  EXPECT_EQ(experiment_config_to_json(parse_experiment_config(text)), text);
  auto j = nlohmann::json::parse(text);
  j["surprise"] = 1;
  EXPECT_EQ(code_of([&] { parse_experiment_config(j.dump()); }), ErrorCode::kParseError);
  auto rel = nlohmann::json::parse(text);
  rel["data"]["manifest"] = "m.tsv";
  const auto resolved = parse_experiment_config(rel.dump(), "/base");
  EXPECT_EQ(resolved.data.manifest, std::filesystem::path("/base/m.tsv"));
  auto bad = nlohmann::json::parse(text);
  bad["train_fraction"] = 1.5;
  EXPECT_NE(code_of([&] { parse_experiment_config(bad.dump()); }), ErrorCode{});
}

TEST(Synthetic, BayesRates) {
  SyntheticSpec s;
  EXPECT_NEAR(audio_bayes_accuracy(s), 0.80, 0.002);
  EXPECT_NEAR(video_bayes_accuracy(s), 0.91, 0.002);
  EXPECT_NEAR(joint_bayes_accuracy(s), 0.97, 0.002);
  // Monte Carlo of the optimal linear rule on the 2-d latent.
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  const double r = s.correlation, da = s.audio_separation, dv = s.video_separation;
  const double wa = (da - r * dv), wv = (dv - r * da);  // Sigma^-1 delta up to scale
  std::size_t correct = 0;
  const std::size_t trials = 400000;
  for (std::size_t i = 0; i < trials; ++i) {
    const double sign = i % 2 ? 0.5 : -0.5;
    const double za = n(rng);
    const double zv = r * za + std::sqrt(1 - r * r) * n(rng);
    const double score = wa * (sign * da + za) + wv * (sign * dv + zv);
    correct += (score > 0) == (sign > 0);
  }
  EXPECT_NEAR(static_cast<double>(correct) / trials, joint_bayes_accuracy(s), 0.002);
}

std::vector<double> class_mean_gap(const data::EmbeddingStore& store, const data::ClipManifest& m) {
  std::vector<double> gap(store.dim(), 0.0);
  for (const auto& e : m.entries()) {
    const auto v = store.at(e.id);
    const double w = e.label == data::Label::kViolent ? 1.0 : -1.0;
    for (std::size_t k = 0; k < gap.size(); ++k) gap[k] += w * v[k];
  }
  for (auto& g : gap) g /= static_cast<double>(m.size()) / 2.0;
  return gap;
}

TEST(Synthetic, GeneratorStatistics) {
  SyntheticSpec s;
  s.clips = 6000;
  s.seed = 9;
  const auto d = make_synthetic(s);
  EXPECT_EQ(d.manifest.size(), 6000u);
  EXPECT_TRUE(d.manifest.balanced());
  const auto ga = class_mean_gap(d.audio, d.manifest);
  const auto gv = class_mean_gap(d.video, d.manifest);
  auto norm = [](const std::vector<double>& g) {
    double s2 = 0.0;
    for (double v : g) s2 += v * v;
    return std::sqrt(s2);
  };
  EXPECT_NEAR(norm(ga), s.audio_separation, 0.1);
  EXPECT_NEAR(norm(gv), s.video_separation, 0.1);
  // Within-class correlation of the projections on the mean-gap directions.
  double saa = 0, svv = 0, sav = 0;
  const double na = norm(ga), nv = norm(gv);
  for (const auto& e : d.manifest.entries()) {
    const double c = e.label == data::Label::kViolent ? 0.5 : -0.5;
    const auto a = d.audio.at(e.id);
    const auto v = d.video.at(e.id);
    double pa = 0, pv = 0;
    for (std::size_t k = 0; k < ga.size(); ++k) pa += a[k] * ga[k] / na;
    for (std::size_t k = 0; k < gv.size(); ++k) pv += v[k] * gv[k] / nv;
    pa -= c * na;
    pv -= c * nv;
    saa += pa * pa;
    svv += pv * pv;
    sav += pa * pv;
  }
  EXPECT_NEAR(sav / std::sqrt(saa * svv), s.correlation, 0.05);
  const auto again = make_synthetic(s);
  EXPECT_EQ(again.audio.records(), d.audio.records());
}

TEST(Synthetic, WriteAndLoad) {
  const auto dir = fixture::scratch_dir("synthetic");
  const auto paths = write_synthetic(small_spec(), dir);
  const auto loaded = load_experiment_data(paths);
  const auto direct = make_synthetic(small_spec());
  EXPECT_EQ(loaded.manifest, direct.manifest);
  EXPECT_EQ(loaded.audio.records(), direct.audio.records());
  EXPECT_EQ(loaded.video.records(), direct.video.records());
}

TEST(Report, JsonAndTable) {
  RunMetrics run;
  run.val_accuracy = 96.25;
  std::vector<MetricsReport> rows;
  for (auto s : fusion::kAllStrategies) rows.push_back(aggregate(s, {run}));
  const auto j = nlohmann::json::parse(reports_to_json(rows));
  ASSERT_EQ(j["rows"].size(), 5u);
  EXPECT_EQ(j["rows"][0]["model"], "Hybrid fusion");
  EXPECT_EQ(j["rows"][4]["strategy"], "audio_only");
  EXPECT_EQ(j["rows"][2]["ava"], 96.25);
  const auto table = reports_to_table(rows);
  EXPECT_NE(table.find("Late fusion"), std::string::npos);
  EXPECT_NE(table.find("96.25"), std::string::npos);
}

}  // namespace
}  // namespace avf::harness
