// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/data/manifest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "avf/error.hpp"

namespace avf::data {

namespace {

constexpr std::string_view kAugmentedPrefix = "augmented:";

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

Provenance parse_provenance(std::string_view token, std::size_t line_no) {
  Provenance p;
  if (token == "original") return p;
  if (!token.starts_with(kAugmentedPrefix)) {
    raise(ErrorCode::kParseError, "line " + std::to_string(line_no) +
                                      ": bad provenance '" +
                                      std::string(token) + "'");
  }
  token.remove_prefix(kAugmentedPrefix.size());
  const std::size_t hash = token.find('#');
  p.augmented = true;
  p.parent_id = std::string(token.substr(0, hash));
  if (hash != std::string_view::npos) p.spec = std::string(token.substr(hash + 1));
  if (!valid_clip_id(p.parent_id)) {
    raise(ErrorCode::kParseError, "line " + std::to_string(line_no) +
                                      ": bad parent id '" + p.parent_id + "'");
  }
  return p;
}

}  // namespace

Label label_from_index(int index) {
  if (index != 0 && index != 1) {
    raise(ErrorCode::kInvalidArgument, "class index out of range");
  }
  return static_cast<Label>(index);
}

std::string_view to_string(Label label) {
  return label == Label::kViolent ? "violent" : "nonviolent";
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kValidation: return "val";
    case Split::kUnassigned: return "unassigned";
  }
  return "unassigned";
}

std::optional<Label> parse_label(std::string_view token) {
  if (token == "violent") return Label::kViolent;
  if (token == "nonviolent") return Label::kNonViolent;
  return std::nullopt;
}

std::optional<Split> parse_split(std::string_view token) {
  if (token == "train") return Split::kTrain;
  if (token == "val") return Split::kValidation;
  if (token == "unassigned") return Split::kUnassigned;
  return std::nullopt;
}

bool valid_clip_id(std::string_view id) {
  if (id.empty() || id.size() > 255) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

ClipManifest::ClipManifest(std::vector<ClipEntry> entries)
    : entries_(std::move(entries)) {
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const ClipEntry& e = entries_[i];
    if (!valid_clip_id(e.id)) {
      raise(ErrorCode::kParseError, "invalid clip id '" + e.id + "'");
    }
    if (!(e.duration_s > 0.0) || !std::isfinite(e.duration_s)) {
      raise(ErrorCode::kParseError, "clip '" + e.id + "' has non-positive duration");
    }
    if (!index_.emplace(e.id, i).second) {
      raise(ErrorCode::kDuplicateId, "duplicate clip id '" + e.id + "'");
    }
  }
  for (const ClipEntry& e : entries_) {
    if (!e.provenance.augmented) continue;
    const ClipEntry* parent = find(e.provenance.parent_id);
    if (parent == nullptr || !parent->is_original()) {
      raise(ErrorCode::kDanglingParent,
            "clip '" + e.id + "' references missing original '" +
                e.provenance.parent_id + "'");
    }
    if (parent->label != e.label) {
      raise(ErrorCode::kParseError,
            "augmented clip '" + e.id + "' does not carry its parent's label");
    }
  }
}

const ClipEntry* ClipManifest::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

const ClipEntry& ClipManifest::at(std::string_view id) const {
  const ClipEntry* e = find(id);
  if (e == nullptr) {
    raise(ErrorCode::kInvalidArgument, "unknown clip id '" + std::string(id) + "'");
  }
  return *e;
}

std::size_t ClipManifest::original_count() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.is_original();
  return n;
}

std::size_t ClipManifest::original_count(Label label) const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.is_original() && e.label == label;
  return n;
}

bool ClipManifest::balanced() const {
  return original_count(Label::kViolent) == original_count(Label::kNonViolent);
}

ClipManifest parse_manifest(std::istream& in) {
  std::vector<ClipEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line, '\t');
    const std::string where = "line " + std::to_string(line_no);
    if (fields.size() != 6) {
      raise(ErrorCode::kParseError, where + ": expected 6 tab-separated fields, got " +
                                        std::to_string(fields.size()));
    }
    ClipEntry e;
    e.id = std::string(fields[0]);
    if (!valid_clip_id(e.id)) {
      raise(ErrorCode::kParseError, where + ": invalid id '" + e.id + "'");
    }
    e.media_path = std::string(fields[1]);
    const auto label = parse_label(fields[2]);
    if (!label) {
      raise(ErrorCode::kParseError, where + ": unknown label '" +
                                        std::string(fields[2]) + "'");
    }
    e.label = *label;
    const auto split = parse_split(fields[3]);
    if (!split) {
      raise(ErrorCode::kParseError, where + ": unknown split '" +
                                        std::string(fields[3]) + "'");
    }
    e.split = *split;
    const auto dur = fields[4];
    auto [ptr, ec] = std::from_chars(dur.data(), dur.data() + dur.size(), e.duration_s);
    if (ec != std::errc() || ptr != dur.data() + dur.size()) {
      raise(ErrorCode::kParseError, where + ": bad duration '" + std::string(dur) + "'");
    }
    e.provenance = parse_provenance(fields[5], line_no);
    entries.push_back(std::move(e));
  }
  return ClipManifest(std::move(entries));
}

ClipManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::kIo, "cannot open manifest " + path.string());
  return parse_manifest(in);
}

void write_manifest(std::ostream& out, const ClipManifest& manifest) {
  for (const ClipEntry& e : manifest.entries()) {
    out << e.id << '\t' << e.media_path.string() << '\t' << to_string(e.label)
        << '\t' << to_string(e.split) << '\t' << format_double(e.duration_s)
        << '\t';
    if (e.provenance.augmented) {
      out << kAugmentedPrefix << e.provenance.parent_id;
      if (!e.provenance.spec.empty()) out << '#' << e.provenance.spec;
    } else {
      out << "original";
    }
    out << '\n';
  }
}

void save_manifest(const std::filesystem::path& path,
                   const ClipManifest& manifest) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::kIo, "cannot write manifest " + path.string());
  write_manifest(out, manifest);
  if (!out) raise(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace avf::data
