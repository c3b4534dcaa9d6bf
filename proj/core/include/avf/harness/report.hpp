// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "avf/fusion/head.hpp"
#include "avf/harness/metrics.hpp"
#include "avf/harness/search.hpp"

namespace avf::harness {

/// Machine-readable report: {"rows": [...]} with one object per strategy
/// holding ata/atl/ava/avl, the summed confusion matrix and per-run detail.
/// Output depends only on the values, so equal reports serialize to
/// identical bytes.
std::string reports_to_json(const std::vector<MetricsReport>& rows);

/// Fixed-width table: model, ATA (%), ATL, AVA (%), AVL.
std::string reports_to_table(const std::vector<MetricsReport>& rows);

std::string predictions_to_json(const std::vector<fusion::Prediction>& predictions,
                                const EvalResult& summary);

std::string search_to_json(const SearchResult& result);

/// Writes `text` to `path`, creating parent directories. Raises Io.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace avf::harness
