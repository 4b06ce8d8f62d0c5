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

// Synthetic paired two-view data with a superclass/subclass hierarchy.
//
// Each superclass gets a Gaussian latent prototype; each subclass offsets
// its parent's. A sample of subclass c is an "image" view
//   A (proto_c + noise)
// and a "text" view
//   B (proto_c + noise') + offset(c, t)
// where A and B are fixed random projections and t is a template index
// drawn uniformly. The per-class template offsets double as the prompts
// used to build zero-shot class embeddings.

#ifndef CYCLIP_DATAGEN_H_
#define CYCLIP_DATAGEN_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cyclip/hierarchy.h"
#include "cyclip/linalg.h"

namespace cyclip {

struct GeneratorConfig {
  std::size_t num_superclasses = 8;
  // One entry per superclass, or a single entry applied to all of them.
  std::vector<std::size_t> children_per_parent = {4};
  std::size_t latent_dim = 16;
  std::size_t image_dim = 64;
  std::size_t text_dim = 48;
  std::size_t num_templates = 4;
  double noise_sigma = 0.3;
  double parent_sigma = 1.0;
  double child_sigma = 0.35;
  std::size_t train_size = 2000;
  std::size_t test_size = 800;
  std::uint64_t seed = 0;

  // Throws kBadConfig on non-positive counts/dims or negative sigmas.
  void Validate() const;

  bool operator==(const GeneratorConfig& other) const = default;
};

struct DataSplit {
  Matrix image_features;  // count x image_dim
  Matrix text_features;   // count x text_dim
  std::vector<std::size_t> subclasses;
  std::vector<std::size_t> superclasses;

  std::size_t size() const { return subclasses.size(); }
  bool operator==(const DataSplit& other) const = default;
};

struct SyntheticDataset {
  GeneratorConfig config;
  ClassHierarchy hierarchy;
  Matrix parent_prototypes;  // num_superclasses x latent_dim
  Matrix class_prototypes;   // num_subclasses x latent_dim
  Matrix image_projection;   // image_dim x latent_dim
  Matrix text_projection;    // text_dim x latent_dim
  std::vector<Matrix> template_offsets;  // per subclass: num_templates x text_dim
  DataSplit train;
  DataSplit test;

  bool operator==(const SyntheticDataset& other) const = default;
};

// Children are assigned contiguously: superclass 0 owns subclasses
// [0, children[0]), superclass 1 the next block, and so on. The result does
// not depend on `seed`.
ClassHierarchy MakeHierarchy(std::size_t num_superclasses,
                             std::span<const std::size_t> children_per_parent,
                             std::uint64_t seed);

SyntheticDataset SampleDataset(const GeneratorConfig& cfg);

// Noiseless text views B proto_c + offset(c, t) for t < how_many. Throws
// kBadClass and kTooManyTemplates.
Matrix PromptViews(const SyntheticDataset& ds, std::size_t class_id, std::size_t how_many);

}  // namespace cyclip

#endif  // CYCLIP_DATAGEN_H_
