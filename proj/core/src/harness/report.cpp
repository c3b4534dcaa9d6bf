// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/harness/report.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "avf/error.hpp"

namespace avf::harness {

namespace {

using nlohmann::json;

json confusion_json(const Confusion& c) {
  return json::array({json::array({c[0][0], c[0][1]}), json::array({c[1][0], c[1][1]})});
}

json report_json(const MetricsReport& r) {
  json runs = json::array();
  for (const auto& run : r.per_run) {
    runs.push_back({{"run", run.run},
                    {"split_seed", run.split_seed},
                    {"train_seed", run.train_seed},
                    {"train_accuracy", run.train_accuracy},
                    {"train_loss", run.train_loss},
                    {"val_accuracy", run.val_accuracy},
                    {"val_loss", run.val_loss},
                    {"confusion", confusion_json(run.confusion)}});
  }
  return {{"model", std::string(fusion::display_name(r.strategy))},
          {"strategy", std::string(fusion::to_string(r.strategy))},
          {"ata", r.ata},
          {"atl", r.atl},
          {"ava", r.ava},
          {"avl", r.avl},
          {"confusion", confusion_json(r.confusion)},
          {"per_run", runs}};
}

}  // namespace

std::string reports_to_json(const std::vector<MetricsReport>& rows) {
  json out = {{"rows", json::array()}};
  for (const auto& r : rows) out["rows"].push_back(report_json(r));
  return out.dump(2) + "\n";
}

std::string reports_to_table(const std::vector<MetricsReport>& rows) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-22s %8s %8s %8s %8s\n", "Model", "ATA(%)", "ATL", "AVA(%)",
                "AVL");
  out += line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-22s %8.2f %8.4f %8.2f %8.4f\n",
                  std::string(fusion::display_name(r.strategy)).c_str(), r.ata, r.atl, r.ava,
                  r.avl);
    out += line;
  }
  return out;
}

std::string predictions_to_json(const std::vector<fusion::Prediction>& predictions,
                                const EvalResult& summary) {
  json preds = json::array();
  for (const auto& p : predictions) {
    preds.push_back({{"clip_id", p.clip_id},
                     {"probabilities", json::array({p.probabilities[0], p.probabilities[1]})},
                     {"label", std::string(data::to_string(p.label))}});
  }
  json out = {{"accuracy", summary.accuracy},
              {"mean_loss", summary.mean_loss},
              {"count", summary.count},
              {"confusion", confusion_json(summary.confusion)},
              {"predictions", preds}};
  return out.dump(2) + "\n";
}

std::string search_to_json(const SearchResult& result) {
  json trials = json::array();
  for (const auto& t : result.trials) {
    trials.push_back({{"dropout", t.config.head.dropout},
                      {"learning_rate", t.config.training.learning_rate},
                      {"batch_size", t.config.training.batch_size},
                      {"intermediate_hidden", t.config.head.intermediate_hidden},
                      {"branch_hidden", t.config.head.branch_hidden},
                      {"combiner_hidden", t.config.head.combiner_hidden},
                      {"ava", t.report.ava},
                      {"avl", t.report.avl},
                      {"ata", t.report.ata},
                      {"atl", t.report.atl}});
  }
  json out = {{"best_trial", result.best_index}, {"trials", trials}};
  return out.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) raise(ErrorCode::kIo, "failed writing " + path.string());
}

}  // namespace avf::harness
