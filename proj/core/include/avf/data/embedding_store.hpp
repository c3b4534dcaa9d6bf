// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace avf::data {

enum class Modality : std::uint8_t { kAudio = 0, kVideo = 1 };

std::string_view to_string(Modality m);
std::optional<Modality> parse_modality(std::string_view token);

struct EmbeddingRecord {
  std::string clip_id;
  Modality modality = Modality::kAudio;
  std::vector<float> values;

  std::size_t dim() const noexcept { return values.size(); }
  friend bool operator==(const EmbeddingRecord&, const EmbeddingRecord&) = default;
};

// AVFE embedding file. A file is one or more sections; each section is
//
//   "AVFE"  u32 version(=1)  u8 modality  u32 dim  u64 count
//   count x ( u16 id_len, id bytes, dim x f32 )
//
// all little-endian. A writer emits one section per maximal run of records
// sharing a modality, so a single-modality list is a single section and
// mixed lists round-trip in order.
inline constexpr char kEmbeddingMagic[4] = {'A', 'V', 'F', 'E'};
inline constexpr std::uint32_t kEmbeddingVersion = 1;
inline constexpr std::size_t kEmbeddingHeaderBytes = 4 + 4 + 1 + 4 + 8;

/// Size in bytes of the file write_embeddings() produces for these records.
std::size_t embedding_file_size(std::span<const EmbeddingRecord> records);

void write_embeddings(std::ostream& out, std::span<const EmbeddingRecord> records);
void write_embeddings(const std::filesystem::path& path,
                      std::span<const EmbeddingRecord> records);
std::vector<EmbeddingRecord> read_embeddings(std::istream& in);
std::vector<EmbeddingRecord> read_embeddings(const std::filesystem::path& path);

/// Id-indexed view over one modality's records.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  EmbeddingStore(Modality modality, std::vector<EmbeddingRecord> records);

  static EmbeddingStore load(const std::filesystem::path& path, Modality modality);

  Modality modality() const noexcept { return modality_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool contains(const std::string& clip_id) const;
  /// Raises MissingEmbedding when the clip is absent.
  std::span<const float> at(const std::string& clip_id) const;
  const std::vector<EmbeddingRecord>& records() const noexcept { return records_; }

 private:
  Modality modality_ = Modality::kAudio;
  std::size_t dim_ = 0;
  std::vector<EmbeddingRecord> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace avf::data
