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

#include "cyclip/io.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <span>
#include <string_view>

#include "cyclip/error.h"

namespace cyclip {
namespace {

constexpr std::string_view kEmbeddingMagic = "CYEM";
constexpr std::string_view kDatasetMagic = "CYDS";
constexpr std::string_view kCheckpointMagic = "CYCK";

class ByteWriter {
 public:
  void Magic(std::string_view m) { bytes_.insert(bytes_.end(), m.begin(), m.end()); }
  void U8(std::uint8_t v) { bytes_.push_back(v); }
  void U32(std::uint32_t v) { Le(v, 4); }
  void U64(std::uint64_t v) { Le(v, 8); }
  void I64(std::int64_t v) { Le(static_cast<std::uint64_t>(v), 8); }
  void F32(float v) { Le(std::bit_cast<std::uint32_t>(v), 4); }
  void F64(double v) { Le(std::bit_cast<std::uint64_t>(v), 8); }
  void Str(std::string_view s) {
    U64(s.size());
    bytes_.insert(bytes_.end(), s.begin(), s.end());
  }
  void Sizes(const std::vector<std::size_t>& v) {
    U64(v.size());
    for (std::size_t x : v) U64(x);
  }
  void Doubles(std::span<const double> v) {
    for (double x : v) F64(x);
  }
  void Mat(const Matrix& m) {
    U64(m.rows());
    U64(m.cols());
    Doubles(m.values());
  }

  std::vector<std::uint8_t>& bytes() { return bytes_; }

 private:
  void Le(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  std::vector<std::uint8_t> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  void ExpectMagic(std::string_view m) {
    Need(m.size());
    if (std::memcmp(data_.data() + pos_, m.data(), m.size()) != 0) {
      throw Error(ErrorCode::kBadMagic, "expected magic " + std::string(m));
    }
    pos_ += m.size();
  }
  void ExpectVersion(std::uint32_t supported) {
    const std::uint32_t v = U32();
    if (v != supported) {
      throw Error(ErrorCode::kUnsupportedVersion, "format version " + std::to_string(v));
    }
  }
  std::uint8_t U8() {
    Need(1);
    return data_[pos_++];
  }
  std::uint32_t U32() { return static_cast<std::uint32_t>(Le(4)); }
  std::uint64_t U64() { return Le(8); }
  std::int64_t I64() { return static_cast<std::int64_t>(Le(8)); }
  float F32() { return std::bit_cast<float>(static_cast<std::uint32_t>(Le(4))); }
  double F64() { return std::bit_cast<double>(Le(8)); }
  std::size_t Size() { return static_cast<std::size_t>(U64()); }
  std::string Str() {
    const std::size_t n = Size();
    Need(n);
    std::string s(reinterpret_cast<const char*>(data_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  std::vector<std::size_t> Sizes() {
    const std::size_t n = Size();
    Need(n * 8);
    std::vector<std::size_t> v(n);
    for (auto& x : v) x = Size();
    return v;
  }
  Matrix Mat() {
    const std::size_t rows = Size();
    const std::size_t cols = Size();
    if (cols != 0 && rows > remaining() / 8 / cols) {
      throw Error(ErrorCode::kTruncatedFile, "matrix payload exceeds file");
    }
    std::vector<double> data(rows * cols);
    for (double& x : data) x = F64();
    return Matrix(rows, cols, std::move(data));
  }
  std::size_t remaining() const { return data_.size() - pos_; }
  void Finish() const {
    if (pos_ != data_.size()) {
      throw Error(ErrorCode::kTrailingData,
                  std::to_string(data_.size() - pos_) + " unexpected trailing bytes");
    }
  }

 private:
  void Need(std::size_t n) const {
    if (n > data_.size() - pos_) throw Error(ErrorCode::kTruncatedFile, "unexpected end of file");
  }
  std::uint64_t Le(int n) {
    Need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * i);
    return v;
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

void WriteSplit(ByteWriter& w, const DataSplit& s) {
  w.Mat(s.image_features);
  w.Mat(s.text_features);
  w.Sizes(s.subclasses);
  w.Sizes(s.superclasses);
}

DataSplit ReadSplit(ByteReader& r) {
  DataSplit s;
  s.image_features = r.Mat();
  s.text_features = r.Mat();
  s.subclasses = r.Sizes();
  s.superclasses = r.Sizes();
  return s;
}

void WriteEncoder(ByteWriter& w, const MlpEncoder& enc) {
  w.U64(enc.layers().size());
  for (const auto& layer : enc.layers()) {
    w.Mat(layer.weight);
    w.U64(layer.bias.size());
    w.Doubles(layer.bias);
  }
}

MlpEncoder ReadEncoder(ByteReader& r) {
  const std::size_t n = r.Size();
  if (n > r.remaining()) throw Error(ErrorCode::kTruncatedFile, "layer count exceeds file");
  std::vector<DenseLayer> layers(n);
  for (auto& layer : layers) {
    layer.weight = r.Mat();
    const std::size_t b = r.Size();
    if (b > r.remaining() / 8) throw Error(ErrorCode::kTruncatedFile, "bias exceeds file");
    layer.bias.resize(b);
    for (double& x : layer.bias) x = r.F64();
  }
  return MlpEncoder(std::move(layers));
}

}  // namespace

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failed for " + path.string());
  return bytes;
}

void WriteFileBytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

std::uint64_t EmbeddingFileBytes(std::uint64_t count, std::uint64_t dim, bool has_labels) {
  return kEmbeddingHeaderBytes + 4 * count * dim + (has_labels ? 8 * count : 0);
}

void WriteEmbeddings(const std::filesystem::path& path, const Matrix& vectors,
                     const std::optional<std::vector<std::int64_t>>& labels) {
  if (labels && labels->size() != vectors.rows()) {
    throw Error(ErrorCode::kBatchMismatch, "label count differs from row count");
  }
  if (vectors.rows() > UINT32_MAX || vectors.cols() > UINT32_MAX) {
    throw Error(ErrorCode::kIoError, "embedding matrix too large for the file format");
  }
  ByteWriter w;
  w.Magic(kEmbeddingMagic);
  w.U32(kEmbeddingFormatVersion);
  w.U32(static_cast<std::uint32_t>(vectors.cols()));
  w.U32(static_cast<std::uint32_t>(vectors.rows()));
  w.U8(labels ? 1 : 0);
  for (double x : vectors.values()) w.F32(static_cast<float>(x));
  if (labels) {
    for (std::int64_t l : *labels) w.I64(l);
  }
  WriteFileBytes(path, w.bytes());
}

void WriteEmbeddings(const std::filesystem::path& path, const EmbeddingBatch& batch,
                     const std::optional<std::vector<std::int64_t>>& labels) {
  WriteEmbeddings(path, batch.vectors(), labels);
}

EmbeddingFile ReadEmbeddings(const std::filesystem::path& path) {
  const auto bytes = ReadFileBytes(path);
  ByteReader r(bytes);
  r.ExpectMagic(kEmbeddingMagic);
  r.ExpectVersion(kEmbeddingFormatVersion);
  const std::uint32_t dim = r.U32();
  const std::uint32_t count = r.U32();
  const std::uint8_t has_labels = r.U8();
  if (has_labels > 1) throw Error(ErrorCode::kParseError, "has_labels flag must be 0 or 1");
  const std::uint64_t expected = EmbeddingFileBytes(count, dim, has_labels == 1);
  if (bytes.size() < expected) {
    throw Error(ErrorCode::kTruncatedFile, "file has " + std::to_string(bytes.size()) +
                                               " bytes, header declares " +
                                               std::to_string(expected));
  }
  if (bytes.size() > expected) {
    throw Error(ErrorCode::kTrailingData, "file has " + std::to_string(bytes.size()) +
                                              " bytes, header declares " +
                                              std::to_string(expected));
  }
  std::vector<double> data(static_cast<std::size_t>(count) * dim);
  for (double& x : data) x = r.F32();
  EmbeddingFile out{Matrix(count, dim, std::move(data)), std::nullopt};
  if (has_labels) {
    std::vector<std::int64_t> labels(count);
    for (auto& l : labels) l = r.I64();
    out.labels = std::move(labels);
  }
  r.Finish();
  return out;
}

void WriteDataset(const std::filesystem::path& path, const SyntheticDataset& ds) {
  ByteWriter w;
  w.Magic(kDatasetMagic);
  w.U32(kDatasetFormatVersion);
  const GeneratorConfig& c = ds.config;
  w.U64(c.num_superclasses);
  w.Sizes(c.children_per_parent);
  w.U64(c.latent_dim);
  w.U64(c.image_dim);
  w.U64(c.text_dim);
  w.U64(c.num_templates);
  w.F64(c.noise_sigma);
  w.F64(c.parent_sigma);
  w.F64(c.child_sigma);
  w.U64(c.train_size);
  w.U64(c.test_size);
  w.U64(c.seed);
  w.U64(ds.hierarchy.num_superclasses());
  w.Sizes(ds.hierarchy.parent_map());
  w.Mat(ds.parent_prototypes);
  w.Mat(ds.class_prototypes);
  w.Mat(ds.image_projection);
  w.Mat(ds.text_projection);
  w.U64(ds.template_offsets.size());
  for (const auto& m : ds.template_offsets) w.Mat(m);
  WriteSplit(w, ds.train);
  WriteSplit(w, ds.test);
  WriteFileBytes(path, w.bytes());
}

SyntheticDataset ReadDataset(const std::filesystem::path& path) {
  const auto bytes = ReadFileBytes(path);
  ByteReader r(bytes);
  r.ExpectMagic(kDatasetMagic);
  r.ExpectVersion(kDatasetFormatVersion);
  SyntheticDataset ds;
  GeneratorConfig& c = ds.config;
  c.num_superclasses = r.Size();
  c.children_per_parent = r.Sizes();
  c.latent_dim = r.Size();
  c.image_dim = r.Size();
  c.text_dim = r.Size();
  c.num_templates = r.Size();
  c.noise_sigma = r.F64();
  c.parent_sigma = r.F64();
  c.child_sigma = r.F64();
  c.train_size = r.Size();
  c.test_size = r.Size();
  c.seed = r.U64();
  const std::size_t num_superclasses = r.Size();
  ds.hierarchy = ClassHierarchy(num_superclasses, r.Sizes());
  ds.parent_prototypes = r.Mat();
  ds.class_prototypes = r.Mat();
  ds.image_projection = r.Mat();
  ds.text_projection = r.Mat();
  const std::size_t offsets = r.Size();
  if (offsets > r.remaining()) throw Error(ErrorCode::kTruncatedFile, "offset count");
  for (std::size_t i = 0; i < offsets; ++i) ds.template_offsets.push_back(r.Mat());
  ds.train = ReadSplit(r);
  ds.test = ReadSplit(r);
  r.Finish();
  return ds;
}

void WriteCheckpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  ByteWriter w;
  w.Magic(kCheckpointMagic);
  w.U32(kCheckpointFormatVersion);
  w.Str(ckpt.variant);
  w.F64(ckpt.lambda1);
  w.F64(ckpt.lambda2);
  w.F64(ckpt.model.logit_scale.value);
  WriteEncoder(w, ckpt.model.image_encoder);
  WriteEncoder(w, ckpt.model.text_encoder);
  WriteFileBytes(path, w.bytes());
}

Checkpoint ReadCheckpoint(const std::filesystem::path& path) {
  const auto bytes = ReadFileBytes(path);
  ByteReader r(bytes);
  r.ExpectMagic(kCheckpointMagic);
  r.ExpectVersion(kCheckpointFormatVersion);
  Checkpoint ckpt;
  ckpt.variant = r.Str();
  ckpt.lambda1 = r.F64();
  ckpt.lambda2 = r.F64();
  ckpt.model.logit_scale.value = r.F64();
  ckpt.model.image_encoder = ReadEncoder(r);
  ckpt.model.text_encoder = ReadEncoder(r);
  r.Finish();
  return ckpt;
}

}  // namespace cyclip
