// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace avf::data {

/// Class index doubles as the label encoding used by every classifier head:
/// 0 = nonviolent, 1 = violent.
enum class Label { kNonViolent = 0, kViolent = 1 };
enum class Split { kTrain, kValidation, kUnassigned };

inline constexpr int kClassCount = 2;
inline constexpr int class_index(Label l) { return static_cast<int>(l); }
Label label_from_index(int index);

std::string_view to_string(Label label);
std::string_view to_string(Split split);
std::optional<Label> parse_label(std::string_view token);
std::optional<Split> parse_split(std::string_view token);

struct Provenance {
  bool augmented = false;
  std::string parent_id;
  /// Serialized augmentation specs (compact JSON); empty for originals.
  std::string spec;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ClipEntry {
  std::string id;
  std::filesystem::path media_path;
  Label label = Label::kNonViolent;
  Split split = Split::kUnassigned;
  double duration_s = 0.0;
  Provenance provenance;

  bool is_original() const noexcept { return !provenance.augmented; }
  friend bool operator==(const ClipEntry&, const ClipEntry&) = default;
};

/// Dataset catalog. Construction validates every invariant: ids unique and
/// well formed, augmented entries point at an original parent with the same
/// label, durations positive.
class ClipManifest {
 public:
  ClipManifest() = default;
  explicit ClipManifest(std::vector<ClipEntry> entries);

  const std::vector<ClipEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  static constexpr std::array<std::string_view, kClassCount> class_names() {
    return {"nonviolent", "violent"};
  }

  const ClipEntry* find(std::string_view id) const;
  const ClipEntry& at(std::string_view id) const;

  std::size_t original_count() const;
  std::size_t original_count(Label label) const;
  /// Equal number of originals per class.
  bool balanced() const;

  friend bool operator==(const ClipManifest& a, const ClipManifest& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<ClipEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// True for ids made only of [A-Za-z0-9_.-], at most 255 bytes.
bool valid_clip_id(std::string_view id);

// Manifest text: UTF-8, one clip per line, six TAB-separated fields
//   id  media_path  label  split  duration_s  provenance
// label ∈ {violent, nonviolent}; split ∈ {train, val, unassigned};
// provenance is "original" or "augmented:<parent_id>", optionally followed by
// "#" and the compact JSON augmentation spec. Blank lines and lines starting
// with '#' are ignored.
ClipManifest parse_manifest(std::istream& in);
ClipManifest load_manifest(const std::filesystem::path& path);
void write_manifest(std::ostream& out, const ClipManifest& manifest);
void save_manifest(const std::filesystem::path& path,
                   const ClipManifest& manifest);

}  // namespace avf::data
