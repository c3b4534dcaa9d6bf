// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0
//
// avfusion: preprocessing, augmentation, embedding, training, evaluation and
// strategy comparison for audiovisual fusion classifiers.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "avf/audio/logmel.hpp"
#include "avf/audio/logmel_file.hpp"
#include "avf/audio/resample.hpp"
#include "avf/audio/wav.hpp"
#include "avf/augment/expand.hpp"
#include "avf/augment/ops.hpp"
#include "avf/data/embedding_store.hpp"
#include "avf/data/manifest.hpp"
#include "avf/data/split.hpp"
#include "avf/error.hpp"
#include "avf/fusion/encoder.hpp"
#include "avf/fusion/model_io.hpp"
#include "avf/harness/config.hpp"
#include "avf/harness/dataset.hpp"
#include "avf/harness/experiment.hpp"
#include "avf/harness/report.hpp"
#include "avf/harness/search.hpp"
#include "avf/harness/synthetic.hpp"
#include "avf/seed.hpp"
#include "avf/video/frame_io.hpp"
#include "avf/video/frontend.hpp"

namespace fs = std::filesystem;
using namespace avf;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string config;
  int threads = 1;
};

harness::ExperimentConfig load_config(const Globals& g) {
  harness::ExperimentConfig cfg;
  if (!g.config.empty()) cfg = harness::load_experiment_config(g.config);
  if (g.seed) cfg.seed = *g.seed;
  return cfg;
}

fs::path resolve_media(const data::ClipManifest& manifest, const data::ClipEntry& e,
                       const fs::path& base) {
  const auto& src = e.is_original() ? e : manifest.at(e.provenance.parent_id);
  return src.media_path.is_relative() ? base / src.media_path : src.media_path;
}

// Decodes non-native media through an external ffmpeg binary.
fs::path ffmpeg_extract(const fs::path& media, const fs::path& out, const std::string& args) {
  const std::string cmd = "ffmpeg -nostdin -loglevel error -y -i \"" + media.string() + "\" " +
                          args + " \"" + out.string() + "\"";
  if (std::system(cmd.c_str()) != 0) {
    raise(ErrorCode::kIo, "ffmpeg could not decode " + media.string());
  }
  return out;
}

audio::Waveform load_audio(const fs::path& media, const fs::path& scratch) {
  if (media.extension() == ".wav") return audio::read_wav(media);
  return audio::read_wav(ffmpeg_extract(media, scratch / "decoded.wav", "-vn -ac 1 -ar 16000"));
}

video::RawFrameSequence load_video(const fs::path& media, const std::string& id, int width,
                                   int height, const fs::path& scratch) {
  if (fs::is_directory(media)) return video::read_frame_directory(media, id);
  if (media.extension() == ".rgb") {
    if (width <= 0 || height <= 0) {
      raise(ErrorCode::kInvalidArgument, "raw rgb input needs --width and --height");
    }
    return video::read_raw_rgb(media, width, height, id);
  }
  if (width <= 0 || height <= 0) {
    raise(ErrorCode::kInvalidArgument, "ffmpeg decoding needs --width and --height");
  }
  const auto raw = ffmpeg_extract(
      media, scratch / "decoded.rgb",
      "-an -f rawvideo -pix_fmt rgb24 -s " + std::to_string(width) + "x" + std::to_string(height));
  return video::read_raw_rgb(raw, width, height, id);
}

int cmd_synth(const Globals& g, const fs::path& out, std::size_t clips, std::size_t audio_dim,
              std::size_t video_dim, int epochs, int runs) {
  harness::SyntheticSpec spec;
  spec.clips = clips;
  spec.audio_dim = audio_dim;
  spec.video_dim = video_dim;
  spec.seed = g.seed.value_or(0);
  const auto paths = harness::write_synthetic(spec, out);
  auto cfg = harness::synthetic_experiment_config(spec.seed);
  if (epochs >= 0) cfg.training.epochs = epochs;
  if (runs > 0) cfg.run_count = runs;
  cfg.encoders.audio = "file";
  cfg.encoders.video = "file";
  cfg.data = {paths.manifest.filename(), paths.audio_embeddings.filename(),
              paths.video_embeddings.filename()};
  harness::write_text(out / "config.json", harness::experiment_config_to_json(cfg) + "\n");
  std::printf("wrote %zu clips to %s (Bayes accuracy audio %.2f%%, video %.2f%%, joint %.2f%%)\n",
              spec.clips, out.string().c_str(), 100 * harness::audio_bayes_accuracy(spec),
              100 * harness::video_bayes_accuracy(spec), 100 * harness::joint_bayes_accuracy(spec));
  return 0;
}

int cmd_prep_audio(const fs::path& manifest_path, const fs::path& input, const std::string& id,
                   const fs::path& out) {
  fs::create_directories(out);
  const fs::path scratch = fs::temp_directory_path();
  auto emit = [&](const std::string& clip_id, const audio::Waveform& w) {
    const auto mono = audio::resample_to_16k_mono(w);
    audio::write_logmel(out / (clip_id + ".avlm"), clip_id, audio::compute_log_mel(mono));
    return audio::example_count(mono.samples.size());
  };
  if (!input.empty()) {
    const auto n = emit(id, load_audio(input, scratch));
    std::printf("%s: %zu examples\n", id.c_str(), n);
    return 0;
  }
  const auto manifest = data::load_manifest(manifest_path);
  std::size_t done = 0;
  for (const auto& e : manifest.entries()) {
    auto w = audio::resample_to_16k_mono(
        load_audio(resolve_media(manifest, e, manifest_path.parent_path()), scratch));
    if (!e.is_original()) w = augment::augment_audio(w, augment::augmentation_of(e).audio);
    emit(e.id, w);
    ++done;
  }
  std::printf("wrote %zu log-mel tensors to %s\n", done, out.string().c_str());
  return 0;
}

int cmd_prep_video(const fs::path& manifest_path, const fs::path& input, const std::string& id,
                   const fs::path& out, int frames, int width, int height) {
  fs::create_directories(out);
  const fs::path scratch = fs::temp_directory_path();
  if (!input.empty()) {
    const auto stack = video::sample_frames(load_video(input, id, width, height, scratch), frames);
    video::write_frame_stack(out / (id + ".avfs"), stack);
    return 0;
  }
  const auto manifest = data::load_manifest(manifest_path);
  std::size_t done = 0;
  for (const auto& e : manifest.entries()) {
    const auto media = resolve_media(manifest, e, manifest_path.parent_path());
    auto stack = video::sample_frames(load_video(media, e.id, width, height, scratch), frames);
    if (!e.is_original()) {
      stack = augment::augment_video(stack, augment::augmentation_of(e).video);
    }
    stack.clip_id = e.id;
    video::write_frame_stack(out / (e.id + ".avfs"), stack);
    ++done;
  }
  std::printf("wrote %zu frame stacks to %s\n", done, out.string().c_str());
  return 0;
}

int cmd_augment(const Globals& g, const fs::path& in, const fs::path& out, int copies) {
  const auto cfg = load_config(g);
  auto policy = cfg.augmentation;
  if (copies >= 0) policy.copies_per_clip = copies;
  const auto manifest = data::load_manifest(in);
  const auto expanded = augment::expand_dataset(manifest, policy, cfg.seed);
  data::save_manifest(out, expanded);
  std::printf("%zu -> %zu entries\n", manifest.size(), expanded.size());
  return 0;
}

int cmd_embed(const Globals& g, const fs::path& manifest_path, const fs::path& audio_dir,
              const fs::path& video_dir, const fs::path& out_audio, const fs::path& out_video) {
  const auto cfg = load_config(g);
  const auto manifest = data::load_manifest(manifest_path);
  if (!out_audio.empty()) {
    if (cfg.encoders.audio != "toy") {
      raise(ErrorCode::kInvalidArgument, "file-backed audio embeddings come from the exporter");
    }
    const auto enc = fusion::Encoder::toy_audio(derive_seed(cfg.seed, "toy-audio"),
                                                cfg.encoders.audio_dim);
    std::vector<data::EmbeddingRecord> records;
    for (const auto& e : manifest.entries()) {
      const auto tensor = audio::read_logmel(audio_dir / (e.id + ".avlm"));
      Matrix logmel(tensor.cells.rows(), tensor.cells.cols());
      for (std::size_t k = 0; k < logmel.data().size(); ++k) logmel.data()[k] = tensor.cells.data()[k];
      const auto examples = audio::frame_examples(logmel, e.id);
      records.push_back({e.id, data::Modality::kAudio, enc.embed_clip(examples)});
    }
    data::write_embeddings(out_audio, records);
    std::printf("wrote %zu audio embeddings (dim %zu)\n", records.size(), enc.output_dim());
  }
  if (!out_video.empty()) {
    if (cfg.encoders.video != "toy") {
      raise(ErrorCode::kInvalidArgument, "file-backed video embeddings come from the exporter");
    }
    const auto enc = fusion::Encoder::toy_video(derive_seed(cfg.seed, "toy-video"),
                                                cfg.encoders.video_dim);
    std::vector<data::EmbeddingRecord> records;
    for (const auto& e : manifest.entries()) {
      const auto stack = video::read_frame_stack(video_dir / (e.id + ".avfs"));
      records.push_back({e.id, data::Modality::kVideo, enc.embed_clip(stack)});
    }
    data::write_embeddings(out_video, records);
    std::printf("wrote %zu video embeddings (dim %zu)\n", records.size(), enc.output_dim());
  }
  return 0;
}

fusion::Strategy strategy_or(const std::string& name, fusion::Strategy fallback) {
  if (name.empty()) return fallback;
  const auto s = fusion::parse_strategy(name);
  if (!s) raise(ErrorCode::kInvalidArgument, "unknown strategy '" + name + "'");
  return *s;
}

void apply_overrides(harness::ExperimentConfig& cfg, int epochs, int runs) {
  if (epochs >= 0) cfg.training.epochs = epochs;
  if (runs > 0) cfg.run_count = runs;
}

int cmd_train(const Globals& g, const std::string& strategy, int run, int epochs,
              const fs::path& out) {
  auto cfg = load_config(g);
  apply_overrides(cfg, epochs, -1);
  const auto data = harness::load_experiment_data(cfg.data);
  const auto s = strategy_or(strategy, cfg.head.strategy);
  auto trained = harness::train_run(cfg, data, s, run);

  fs::create_directories(out);
  fusion::save_checkpoint(out / "model.avck", trained.head);
  harness::write_text(out / "model.json", fusion::head_config_to_json(trained.head.config()) + "\n");
  const auto split = data::random_split(data.manifest, trained.metrics.split_seed, cfg.train_fraction);
  data::save_manifest(out / "split_manifest.tsv", data::apply_split(data.manifest, split));
  auto report = harness::aggregate(s, {trained.metrics});
  harness::write_text(out / "train_report.json", harness::reports_to_json({report}));
  std::printf("%s", harness::reports_to_table({report}).c_str());
  return 0;
}

int cmd_eval(const Globals& g, const fs::path& checkpoint, const fs::path& manifest_override,
             const fs::path& out) {
  auto cfg = load_config(g);
  if (!manifest_override.empty()) cfg.data.manifest = manifest_override;
  const auto data = harness::load_experiment_data(cfg.data);
  const auto head = fusion::load_checkpoint(checkpoint);

  std::vector<std::string> ids;
  bool any_validation = false;
  for (const auto& e : data.manifest.entries()) {
    any_validation = any_validation || e.split == data::Split::kValidation;
  }
  for (const auto& e : data.manifest.entries()) {
    if (e.is_original() && (!any_validation || e.split == data::Split::kValidation)) {
      ids.push_back(e.id);
    }
  }
  const auto set = harness::assemble(data, ids, head.strategy());
  std::vector<fusion::Prediction> predictions;
  const auto result = harness::evaluate(
      head, std::span<const harness::Example>(set.examples), &predictions, set.ids);
  if (!out.empty()) harness::write_text(out, harness::predictions_to_json(predictions, result));
  std::printf("accuracy %.4f%%  loss %.6f  (%zu clips)\n", result.accuracy, result.mean_loss,
              result.count);
  return 0;
}

int cmd_compare(const Globals& g, int epochs, int runs, const fs::path& out) {
  auto cfg = load_config(g);
  apply_overrides(cfg, epochs, runs);
  const auto data = harness::load_experiment_data(cfg.data);
  const auto rows = harness::compare_strategies(cfg, data, g.threads);
  const auto table = harness::reports_to_table(rows);
  if (!out.empty()) {
    harness::write_text(out / "compare.json", harness::reports_to_json(rows));
    harness::write_text(out / "compare.txt", table);
  }
  std::printf("%s", table.c_str());
  return 0;
}

int cmd_search(const Globals& g, int budget, int epochs, const fs::path& out) {
  auto cfg = load_config(g);
  apply_overrides(cfg, epochs, -1);
  const auto data = harness::load_experiment_data(cfg.data);
  const int n = budget > 0 ? budget : cfg.search.budget;
  const auto result = harness::random_search(cfg, cfg.search, n, data, g.threads);
  if (!out.empty()) {
    harness::write_text(out / "search.json", harness::search_to_json(result));
    auto best = result.best;
    best.run_count = cfg.run_count;
    harness::write_text(out / "best_config.json", harness::experiment_config_to_json(best) + "\n");
  }
  const auto& r = result.trials[result.best_index].report;
  std::printf("best trial %zu of %zu: AVA %.2f%%  AVL %.4f  dropout %.3g  lr %.3g  batch %zu\n",
              result.best_index, result.trials.size(), r.ava, r.avl, result.best.head.dropout,
              result.best.training.learning_rate, result.best.training.batch_size);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Audiovisual fusion classifier toolkit"};
  app.require_subcommand(1);
  Globals g;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Base seed (overrides the config)");
  app.add_option("--config", g.config, "Experiment config (JSON)")->check(CLI::ExistingFile);
  app.add_option("--threads", g.threads, "Worker threads for independent runs")
      ->check(CLI::PositiveNumber);

  fs::path out;
  fs::path manifest;
  fs::path input;
  std::string id = "clip";
  int epochs = -1;
  int runs = -1;

  auto* synth = app.add_subcommand("synth", "Write the Gaussian synthetic benchmark");
  std::size_t clips = 1800;
  std::size_t audio_dim = 32;
  std::size_t video_dim = 32;
  synth->add_option("--out", out, "Output directory")->required();
  synth->add_option("--clips", clips, "Clip count");
  synth->add_option("--audio-dim", audio_dim, "Audio embedding dim");
  synth->add_option("--video-dim", video_dim, "Video embedding dim");
  synth->add_option("--epochs", epochs, "Epochs recorded in the generated config");
  synth->add_option("--runs", runs, "Runs recorded in the generated config");

  auto* prep_audio = app.add_subcommand("prep-audio", "Waveforms to log-mel tensor files");
  auto* pa_group = prep_audio->add_option_group("source");
  pa_group->add_option("--manifest", manifest, "Clip manifest")->check(CLI::ExistingFile);
  pa_group->add_option("--input", input, "Single media file")->check(CLI::ExistingPath);
  pa_group->require_option(1);
  prep_audio->add_option("--id", id, "Clip id for --input");
  prep_audio->add_option("--out", out, "Output directory")->required();

  auto* prep_video = app.add_subcommand("prep-video", "Frames to frame-stack files");
  int frames = video::kDefaultClipFrames;
  int width = 0;
  int height = 0;
  auto* pv_group = prep_video->add_option_group("source");
  pv_group->add_option("--manifest", manifest, "Clip manifest")->check(CLI::ExistingFile);
  pv_group->add_option("--input", input, "Frame directory, .rgb dump or media file")
      ->check(CLI::ExistingPath);
  pv_group->require_option(1);
  prep_video->add_option("--id", id, "Clip id for --input");
  prep_video->add_option("--out", out, "Output directory")->required();
  prep_video->add_option("--frames", frames, "Frames per clip")->check(CLI::PositiveNumber);
  prep_video->add_option("--width", width, "Raw frame width");
  prep_video->add_option("--height", height, "Raw frame height");

  auto* aug = app.add_subcommand("augment", "Expand a manifest with augmented copies");
  int copies = -1;
  aug->add_option("--manifest", manifest, "Input manifest")->required()->check(CLI::ExistingFile);
  aug->add_option("--out", out, "Output manifest")->required();
  aug->add_option("--copies", copies, "Copies per clip (overrides the config)");

  auto* embed = app.add_subcommand("embed", "Toy-encoder embeddings from preprocessed files");
  fs::path audio_dir;
  fs::path video_dir;
  fs::path out_audio;
  fs::path out_video;
  embed->add_option("--manifest", manifest, "Clip manifest")->required()->check(CLI::ExistingFile);
  embed->add_option("--audio-dir", audio_dir, "Directory of .avlm files");
  embed->add_option("--video-dir", video_dir, "Directory of .avfs files");
  embed->add_option("--out-audio", out_audio, "Audio embedding file")->needs("--audio-dir");
  embed->add_option("--out-video", out_video, "Video embedding file")->needs("--video-dir");

  auto* train = app.add_subcommand("train", "Train one head and save a checkpoint");
  std::string strategy;
  int run = 0;
  train->add_option("--strategy", strategy, "hybrid|intermediate|late|video_only|audio_only");
  train->add_option("--run", run, "Run index (selects split and training seeds)");
  train->add_option("--epochs", epochs, "Epochs (overrides the config)");
  train->add_option("--out", out, "Output directory")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint");
  fs::path checkpoint;
  eval->add_option("--checkpoint", checkpoint, "Fusion checkpoint")->required()->check(
      CLI::ExistingFile);
  eval->add_option("--manifest", manifest, "Manifest (overrides the config)");
  eval->add_option("--out", out, "Predictions JSON");

  auto* compare = app.add_subcommand("compare", "Compare all fusion strategies");
  compare->add_option("--epochs", epochs, "Epochs (overrides the config)");
  compare->add_option("--runs", runs, "Runs per strategy (overrides the config)");
  compare->add_option("--out", out, "Report directory");

  auto* search = app.add_subcommand("search", "Random hyperparameter search");
  int budget = -1;
  search->add_option("--budget", budget, "Trials (overrides the config)");
  search->add_option("--epochs", epochs, "Epochs (overrides the config)");
  search->add_option("--out", out, "Report directory");

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) g.seed = seed;

  try {
    if (*synth) return cmd_synth(g, out, clips, audio_dim, video_dim, epochs, runs);
    if (*prep_audio) return cmd_prep_audio(manifest, input, id, out);
    if (*prep_video) return cmd_prep_video(manifest, input, id, out, frames, width, height);
    if (*aug) return cmd_augment(g, manifest, out, copies);
    if (*embed) return cmd_embed(g, manifest, audio_dir, video_dir, out_audio, out_video);
    if (*train) return cmd_train(g, strategy, run, epochs, out);
    if (*eval) return cmd_eval(g, checkpoint, manifest, out);
    if (*compare) return cmd_compare(g, epochs, runs, out);
    if (*search) return cmd_search(g, budget, epochs, out);
  } catch (const Error& e) {
    std::cerr << "avfusion: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "avfusion: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
