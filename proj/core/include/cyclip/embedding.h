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

#ifndef CYCLIP_EMBEDDING_H_
#define CYCLIP_EMBEDDING_H_

#include <cstddef>
#include <span>

#include "cyclip/linalg.h"

namespace cyclip {

inline constexpr double kUnitNormTolerance = 1e-9;

// N unit-norm d-dimensional rows for one modality.
class EmbeddingBatch {
 public:
  EmbeddingBatch() = default;
  // Throws kNotUnitNorm if some row's norm differs from 1 by more than
  // kUnitNormTolerance.
  explicit EmbeddingBatch(Matrix vectors);

  // Row-normalizes `raw` first; throws kZeroNorm on degenerate rows.
  static EmbeddingBatch Normalized(const Matrix& raw);

  std::size_t count() const { return vectors_.rows(); }
  std::size_t dim() const { return vectors_.cols(); }
  const Matrix& vectors() const { return vectors_; }
  std::span<const double> row(std::size_t i) const { return vectors_.row(i); }

  bool operator==(const EmbeddingBatch& other) const = default;

 private:
  Matrix vectors_;
};

}  // namespace cyclip

#endif  // CYCLIP_EMBEDDING_H_
