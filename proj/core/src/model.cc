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

#include "cyclip/model.h"

#include <array>

#include "cyclip/rng.h"

namespace cyclip {

CyclipModel CyclipModel::Init(std::size_t image_dim, std::size_t text_dim,
                              std::size_t hidden_dim, std::size_t embed_dim,
                              std::uint64_t seed) {
  const std::array<std::size_t, 3> image_dims{image_dim, hidden_dim, embed_dim};
  const std::array<std::size_t, 3> text_dims{text_dim, hidden_dim, embed_dim};
  CyclipModel model;
  model.image_encoder = MlpEncoder::Init(image_dims, Rng::Stream(seed, 1).NextU64());
  model.text_encoder = MlpEncoder::Init(text_dims, Rng::Stream(seed, 2).NextU64());
  return model;
}

ClassTextEmbeddings BuildClassEmbeddings(const CyclipModel& model, const SyntheticDataset& ds,
                                         std::size_t num_prompts) {
  const std::size_t prompts = num_prompts == 0 ? ds.config.num_templates : num_prompts;
  const std::size_t num_classes = ds.hierarchy.num_subclasses();
  Matrix classes(num_classes, model.text_encoder.output_dim());
  for (std::size_t c = 0; c < num_classes; ++c) {
    const EmbeddingBatch encoded = model.text_encoder.Embed(PromptViews(ds, c, prompts));
    classes.SetRow(c, ClassTextEmbedding(encoded));
  }
  return ClassTextEmbeddings(std::move(classes));
}

}  // namespace cyclip
