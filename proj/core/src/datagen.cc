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

#include "cyclip/datagen.h"

#include <cmath>
#include <string>

#include "cyclip/error.h"
#include "cyclip/rng.h"

namespace cyclip {
namespace {

std::vector<std::size_t> ExpandChildren(std::size_t num_superclasses,
                                        std::span<const std::size_t> children) {
  if (children.size() == 1) return std::vector<std::size_t>(num_superclasses, children[0]);
  if (children.size() != num_superclasses) {
    throw Error(ErrorCode::kBadConfig,
                "children_per_parent needs 1 or " + std::to_string(num_superclasses) +
                    " entries");
  }
  return {children.begin(), children.end()};
}

Matrix GaussianMatrix(Rng& rng, std::size_t rows, std::size_t cols, double sigma) {
  Matrix m(rows, cols);
  for (double& x : m.values()) x = sigma * rng.Normal();
  return m;
}

// y = P (x + sigma * eps)
Vector ProjectNoisy(Rng& rng, const Matrix& projection, std::span<const double> latent,
                    double sigma) {
  Vector z(latent.begin(), latent.end());
  for (double& x : z) x += sigma * rng.Normal();
  Vector y(projection.rows());
  for (std::size_t r = 0; r < y.size(); ++r) y[r] = Dot(projection.row(r), z);
  return y;
}

DataSplit SampleSplit(Rng& rng, const SyntheticDataset& ds, std::size_t count) {
  const GeneratorConfig& cfg = ds.config;
  DataSplit split;
  split.image_features = Matrix(count, cfg.image_dim);
  split.text_features = Matrix(count, cfg.text_dim);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t c = rng.Index(ds.hierarchy.num_subclasses());
    const std::size_t t = rng.Index(cfg.num_templates);
    const auto proto = ds.class_prototypes.row(c);
    split.image_features.SetRow(
        i, ProjectNoisy(rng, ds.image_projection, proto, cfg.noise_sigma));
    Vector text = ProjectNoisy(rng, ds.text_projection, proto, cfg.noise_sigma);
    const auto offset = ds.template_offsets[c].row(t);
    for (std::size_t k = 0; k < text.size(); ++k) text[k] += offset[k];
    split.text_features.SetRow(i, text);
    split.subclasses.push_back(c);
    split.superclasses.push_back(ds.hierarchy.parent(c));
  }
  return split;
}

}  // namespace

void GeneratorConfig::Validate() const {
  auto positive = [](std::size_t v, const char* name) {
    if (v == 0) throw Error(ErrorCode::kBadConfig, std::string(name) + " must be positive");
  };
  positive(num_superclasses, "num_superclasses");
  positive(latent_dim, "latent_dim");
  positive(image_dim, "image_dim");
  positive(text_dim, "text_dim");
  positive(num_templates, "num_templates");
  positive(train_size, "train_size");
  positive(test_size, "test_size");
  for (std::size_t c : ExpandChildren(num_superclasses, children_per_parent)) {
    positive(c, "children_per_parent");
  }
  if (!(noise_sigma >= 0.0) || !(parent_sigma >= 0.0) || !(child_sigma >= 0.0)) {
    throw Error(ErrorCode::kBadConfig, "sigmas must be nonnegative");
  }
}

ClassHierarchy MakeHierarchy(std::size_t num_superclasses,
                             std::span<const std::size_t> children_per_parent,
                             std::uint64_t /*seed*/) {
  if (num_superclasses == 0) throw Error(ErrorCode::kBadConfig, "no superclasses");
  const auto children = ExpandChildren(num_superclasses, children_per_parent);
  std::vector<std::size_t> parent_of;
  for (std::size_t p = 0; p < num_superclasses; ++p) {
    if (children[p] == 0) {
      throw Error(ErrorCode::kBadConfig, "superclass " + std::to_string(p) + " has no children");
    }
    parent_of.insert(parent_of.end(), children[p], p);
  }
  return ClassHierarchy(num_superclasses, std::move(parent_of));
}

SyntheticDataset SampleDataset(const GeneratorConfig& cfg) {
  cfg.Validate();
  SyntheticDataset ds;
  ds.config = cfg;
  ds.hierarchy = MakeHierarchy(cfg.num_superclasses, cfg.children_per_parent, cfg.seed);
  const std::size_t num_classes = ds.hierarchy.num_subclasses();

  // Draw order is part of the determinism contract; append, don't reorder.
  Rng rng(cfg.seed);
  ds.parent_prototypes =
      GaussianMatrix(rng, cfg.num_superclasses, cfg.latent_dim, cfg.parent_sigma);
  ds.class_prototypes = Matrix(num_classes, cfg.latent_dim);
  for (std::size_t c = 0; c < num_classes; ++c) {
    const auto parent = ds.parent_prototypes.row(ds.hierarchy.parent(c));
    auto proto = ds.class_prototypes.row(c);
    for (std::size_t k = 0; k < proto.size(); ++k) {
      proto[k] = parent[k] + cfg.child_sigma * rng.Normal();
    }
  }
  const double proj_sigma = 1.0 / std::sqrt(static_cast<double>(cfg.latent_dim));
  ds.image_projection = GaussianMatrix(rng, cfg.image_dim, cfg.latent_dim, proj_sigma);
  ds.text_projection = GaussianMatrix(rng, cfg.text_dim, cfg.latent_dim, proj_sigma);
  for (std::size_t c = 0; c < num_classes; ++c) {
    ds.template_offsets.push_back(
        GaussianMatrix(rng, cfg.num_templates, cfg.text_dim, cfg.noise_sigma));
  }
  ds.train = SampleSplit(rng, ds, cfg.train_size);
  ds.test = SampleSplit(rng, ds, cfg.test_size);
  return ds;
}

Matrix PromptViews(const SyntheticDataset& ds, std::size_t class_id, std::size_t how_many) {
  if (class_id >= ds.hierarchy.num_subclasses()) {
    throw Error(ErrorCode::kBadClass, "class " + std::to_string(class_id) + " out of range");
  }
  if (how_many > ds.config.num_templates) {
    throw Error(ErrorCode::kTooManyTemplates,
                std::to_string(how_many) + " prompts requested, " +
                    std::to_string(ds.config.num_templates) + " templates exist");
  }
  const auto proto = ds.class_prototypes.row(class_id);
  Vector base(ds.text_projection.rows());
  for (std::size_t r = 0; r < base.size(); ++r) base[r] = Dot(ds.text_projection.row(r), proto);
  Matrix views(how_many, base.size());
  for (std::size_t t = 0; t < how_many; ++t) {
    const auto offset = ds.template_offsets[class_id].row(t);
    auto row = views.row(t);
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = base[k] + offset[k];
  }
  return views;
}

}  // namespace cyclip
