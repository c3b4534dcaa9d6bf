// Copyright 2026 The avfusion Authors
// SPDX-License-Identifier: Apache-2.0

#include "avf/data/embedding_store.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>

#include "avf/binary_io.hpp"
#include "avf/error.hpp"

namespace avf::data {

namespace {

// Maximal runs of equal modality: [begin, end) index pairs.
std::vector<std::pair<std::size_t, std::size_t>> sections(
    std::span<const EmbeddingRecord> records) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= records.size(); ++i) {
    if (i == records.size() || records[i].modality != records[begin].modality) {
      out.emplace_back(begin, i);
      begin = i;
    }
  }
  return out;
}

void validate(std::span<const EmbeddingRecord> records) {
  std::map<Modality, std::size_t> dims;
  for (const auto& r : records) {
    if (r.values.empty()) {
      raise(ErrorCode::kDimMismatch, "record '" + r.clip_id + "' has dim 0");
    }
    if (r.clip_id.size() > std::numeric_limits<std::uint16_t>::max()) {
      raise(ErrorCode::kInvalidArgument, "clip id too long");
    }
    if (r.modality != Modality::kAudio && r.modality != Modality::kVideo) {
      raise(ErrorCode::kInvalidArgument, "unknown modality");
    }
    auto [it, inserted] = dims.emplace(r.modality, r.dim());
    if (!inserted && it->second != r.dim()) {
      raise(ErrorCode::kDimMismatch,
            "record '" + r.clip_id + "' has dim " + std::to_string(r.dim()) +
                ", expected " + std::to_string(it->second));
    }
    for (float v : r.values) {
      if (!std::isfinite(v)) {
        raise(ErrorCode::kNonFiniteValue,
              "record '" + r.clip_id + "' contains a non-finite value");
      }
    }
  }
}

}  // namespace

std::string_view to_string(Modality m) {
  return m == Modality::kAudio ? "audio" : "video";
}

std::optional<Modality> parse_modality(std::string_view token) {
  if (token == "audio") return Modality::kAudio;
  if (token == "video") return Modality::kVideo;
  return std::nullopt;
}

std::size_t embedding_file_size(std::span<const EmbeddingRecord> records) {
  std::size_t bytes = 0;
  for (auto [b, e] : sections(records)) {
    if (b == e) continue;
    bytes += kEmbeddingHeaderBytes;
    for (std::size_t i = b; i < e; ++i) {
      bytes += 2 + records[i].clip_id.size() + 4 * records[i].dim();
    }
  }
  return bytes;
}

void write_embeddings(std::ostream& out, std::span<const EmbeddingRecord> records) {
  validate(records);
  if (records.empty()) return;
  for (auto [b, e] : sections(records)) {
    binary::put_bytes(out, {kEmbeddingMagic, 4});
    binary::put(out, kEmbeddingVersion);
    binary::put(out, static_cast<std::uint8_t>(records[b].modality));
    binary::put(out, static_cast<std::uint32_t>(records[b].dim()));
    binary::put(out, static_cast<std::uint64_t>(e - b));
    for (std::size_t i = b; i < e; ++i) {
      const auto& r = records[i];
      binary::put(out, static_cast<std::uint16_t>(r.clip_id.size()));
      binary::put_bytes(out, r.clip_id);
      for (float v : r.values) binary::put_f32(out, v);
    }
  }
}

void write_embeddings(const std::filesystem::path& path,
                      std::span<const EmbeddingRecord> records) {
  validate(records);
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::kIo, "cannot write " + path.string());
  write_embeddings(out, records);
  if (!out) raise(ErrorCode::kIo, "write failed for " + path.string());
}

std::vector<EmbeddingRecord> read_embeddings(std::istream& in) {
  std::vector<EmbeddingRecord> records;
  std::map<Modality, std::size_t> dims;
  while (!binary::at_eof(in)) {
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, kEmbeddingMagic, 4) != 0) {
      raise(ErrorCode::kCorruptHeader, "bad magic");
    }
    const auto version = binary::get<std::uint32_t>(in, "version");
    if (version != kEmbeddingVersion) {
      raise(ErrorCode::kCorruptHeader, "unsupported version " + std::to_string(version));
    }
    const auto modality_byte = binary::get<std::uint8_t>(in, "modality");
    if (modality_byte > 1) {
      raise(ErrorCode::kCorruptHeader, "bad modality byte " + std::to_string(modality_byte));
    }
    const auto modality = static_cast<Modality>(modality_byte);
    const auto dim = binary::get<std::uint32_t>(in, "dim");
    if (dim == 0) raise(ErrorCode::kCorruptHeader, "dim 0");
    auto [it, inserted] = dims.emplace(modality, dim);
    if (!inserted && it->second != dim) {
      raise(ErrorCode::kDimMismatch, "sections of one modality disagree on dim");
    }
    const auto count = binary::get<std::uint64_t>(in, "count");
    for (std::uint64_t k = 0; k < count; ++k) {
      EmbeddingRecord r;
      r.modality = modality;
      const auto id_len = binary::get<std::uint16_t>(in, "id length");
      r.clip_id = binary::get_string(in, id_len, "clip id");
      r.values.resize(dim);
      for (auto& v : r.values) v = binary::get_f32(in, "embedding values");
      records.push_back(std::move(r));
    }
  }
  return records;
}

std::vector<EmbeddingRecord> read_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::kIo, "cannot open " + path.string());
  return read_embeddings(in);
}

EmbeddingStore::EmbeddingStore(Modality modality, std::vector<EmbeddingRecord> records)
    : modality_(modality) {
  for (auto& r : records) {
    if (r.modality != modality) continue;
    if (dim_ == 0) dim_ = r.dim();
    if (r.dim() != dim_) raise(ErrorCode::kDimMismatch, "mixed dims in store");
    index_[r.clip_id] = records_.size();
    records_.push_back(std::move(r));
  }
}

EmbeddingStore EmbeddingStore::load(const std::filesystem::path& path,
                                    Modality modality) {
  if (!std::filesystem::exists(path)) {
    raise(ErrorCode::kMissingArtifacts, "embedding file not found: " + path.string());
  }
  return EmbeddingStore(modality, read_embeddings(path));
}

bool EmbeddingStore::contains(const std::string& clip_id) const {
  return index_.contains(clip_id);
}

std::span<const float> EmbeddingStore::at(const std::string& clip_id) const {
  auto it = index_.find(clip_id);
  if (it == index_.end()) {
    raise(ErrorCode::kMissingEmbedding, std::string(to_string(modality_)) +
                                            " embedding missing for clip '" +
                                            clip_id + "'");
  }
  return records_[it->second].values;
}

}  // namespace avf::data
