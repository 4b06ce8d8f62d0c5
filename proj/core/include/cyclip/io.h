// Copyright 2026 The cyclip Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// On-disk formats. All multi-byte fields are little-endian regardless of
// host byte order.
//
// Embedding file (".cyem"):
//   offset  size  field
//   0       4     magic "CYEM"
//   4       4     format version (u32, currently 1)
//   8       4     dim (u32)
//   12      4     count (u32)
//   16      1     has_labels (0 or 1)
//   17      4*count*dim   f32 payload, row-major
//   ...     8*count       i64 labels, only when has_labels == 1
//
// Dataset (".cyds") and checkpoint (".cyck") files share a simple tagged
// layout: 4-byte magic, u32 version, then fixed-order fields with f64
// values and u64 sizes. Both round-trip exactly.

#ifndef CYCLIP_IO_H_
#define CYCLIP_IO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cyclip/datagen.h"
#include "cyclip/embedding.h"
#include "cyclip/model.h"

namespace cyclip {

inline constexpr std::uint32_t kEmbeddingFormatVersion = 1;
inline constexpr std::uint32_t kDatasetFormatVersion = 1;
inline constexpr std::uint32_t kCheckpointFormatVersion = 1;
inline constexpr std::size_t kEmbeddingHeaderBytes = 17;

std::uint64_t EmbeddingFileBytes(std::uint64_t count, std::uint64_t dim, bool has_labels);

struct EmbeddingFile {
  // Values exactly as stored (f32 widened to f64). Rows are unit norm only
  // up to f32 rounding; batch() renormalizes them.
  Matrix vectors;
  std::optional<std::vector<std::int64_t>> labels;

  EmbeddingBatch batch() const { return EmbeddingBatch::Normalized(vectors); }
};

// Values are rounded to the nearest f32 (ties to even).
void WriteEmbeddings(const std::filesystem::path& path, const Matrix& vectors,
                     const std::optional<std::vector<std::int64_t>>& labels = std::nullopt);
void WriteEmbeddings(const std::filesystem::path& path, const EmbeddingBatch& batch,
                     const std::optional<std::vector<std::int64_t>>& labels = std::nullopt);

// Validates magic, version and exact byte length before decoding.
// Throws kBadMagic, kUnsupportedVersion, kTruncatedFile, kTrailingData,
// kIoError.
EmbeddingFile ReadEmbeddings(const std::filesystem::path& path);

void WriteDataset(const std::filesystem::path& path, const SyntheticDataset& ds);
SyntheticDataset ReadDataset(const std::filesystem::path& path);

struct Checkpoint {
  std::string variant;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  CyclipModel model;

  bool operator==(const Checkpoint& other) const = default;
};

void WriteCheckpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint ReadCheckpoint(const std::filesystem::path& path);

// Raw byte access for tests and determinism checks.
std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

}  // namespace cyclip

#endif  // CYCLIP_IO_H_
