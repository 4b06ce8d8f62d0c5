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

#ifndef CYCLIP_MODEL_H_
#define CYCLIP_MODEL_H_

#include <cstddef>
#include <cstdint>

#include "cyclip/datagen.h"
#include "cyclip/embedding.h"
#include "cyclip/encoder.h"
#include "cyclip/losses.h"
#include "cyclip/metrics.h"

namespace cyclip {

// Image encoder, text encoder and the shared logit scale.
struct CyclipModel {
  MlpEncoder image_encoder;
  MlpEncoder text_encoder;
  LogitScale logit_scale;

  // Two-layer encoders input -> hidden -> embed_dim, seeded from
  // independent streams of `seed`.
  static CyclipModel Init(std::size_t image_dim, std::size_t text_dim, std::size_t hidden_dim,
                          std::size_t embed_dim, std::uint64_t seed);

  bool operator==(const CyclipModel& other) const = default;
};

// Zero-shot class embeddings: each class's first `num_prompts` prompt
// views are encoded and merged with ClassTextEmbedding. num_prompts == 0
// uses every template.
ClassTextEmbeddings BuildClassEmbeddings(const CyclipModel& model, const SyntheticDataset& ds,
                                         std::size_t num_prompts = 0);

}  // namespace cyclip

#endif  // CYCLIP_MODEL_H_
