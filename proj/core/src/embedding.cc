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

#include "cyclip/embedding.h"

#include <cmath>
#include <string>

#include "cyclip/error.h"

namespace cyclip {

EmbeddingBatch::EmbeddingBatch(Matrix vectors) : vectors_(std::move(vectors)) {
  for (std::size_t i = 0; i < vectors_.rows(); ++i) {
    const double n = Norm(vectors_.row(i));
    if (std::abs(n - 1.0) > kUnitNormTolerance) {
      throw Error(ErrorCode::kNotUnitNorm,
                  "row " + std::to_string(i) + " has norm " + std::to_string(n));
    }
  }
}

EmbeddingBatch EmbeddingBatch::Normalized(const Matrix& raw) {
  return EmbeddingBatch(NormalizeRows(raw));
}

}  // namespace cyclip
