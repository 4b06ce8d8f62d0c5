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

// Contrastive loss and the two cycle-consistency regularizers, each with
// exact gradients w.r.t. both embedding matrices and the logit scale.
//
// Every loss has two entry points: one over EmbeddingBatch (the normal
// path, rows known to be unit norm) and one over raw matrices, which
// evaluates the same formula without the unit-norm precondition so the
// gradients can be probed coordinate-wise.

#ifndef CYCLIP_LOSSES_H_
#define CYCLIP_LOSSES_H_

#include <optional>
#include <string>
#include <string_view>

#include "cyclip/embedding.h"
#include "cyclip/linalg.h"

namespace cyclip {

// Logits are exp(s) * <I_j, T_k>, i.e. temperature tau = exp(-s).
struct LogitScale {
  static constexpr double kMin = 0.0;
  static constexpr double kMax = 4.6052;
  // log(1 / 0.07)
  static constexpr double kDefault = 2.659260036932778;

  double value = kDefault;

  double multiplier() const;
  double temperature() const;
  void Clamp();

  bool operator==(const LogitScale& other) const = default;
};

enum class Variant { kClip, kCyclip, kICyclip, kCCyclip };

std::string_view VariantName(Variant v);
std::optional<Variant> ParseVariant(std::string_view name);

struct LossWeights {
  double lambda1 = 0.0;  // in-modal
  double lambda2 = 0.0;  // cross-modal

  static LossWeights For(Variant v);

  bool operator==(const LossWeights& other) const = default;
};

struct LossTerm {
  double value = 0.0;
  Matrix grad_image;
  Matrix grad_text;
  double grad_logit_scale = 0.0;
};

struct LossBreakdown {
  double clip_loss = 0.0;
  double in_modal_loss = 0.0;
  double cross_modal_loss = 0.0;
  double total = 0.0;
  Matrix grad_image_embeddings;
  Matrix grad_text_embeddings;
  double grad_logit_scale = 0.0;
};

// Symmetric InfoNCE over the N x N logit matrix.
LossTerm ClipLoss(const EmbeddingBatch& image, const EmbeddingBatch& text,
                  const LogitScale& scale);
LossTerm ClipLoss(const Matrix& image, const Matrix& text, const LogitScale& scale);

// (1/N) sum_{j,k} (<I_j,T_k> - <I_k,T_j>)^2
LossTerm CrossModalCyclicLoss(const EmbeddingBatch& image, const EmbeddingBatch& text);
LossTerm CrossModalCyclicLoss(const Matrix& image, const Matrix& text);

// (1/N) sum_{j,k} (<I_j,I_k> - <T_k,T_j>)^2
LossTerm InModalCyclicLoss(const EmbeddingBatch& image, const EmbeddingBatch& text);
LossTerm InModalCyclicLoss(const Matrix& image, const Matrix& text);

// clip + lambda1 * in_modal + lambda2 * cross_modal, gradients combined.
LossBreakdown CyclipLoss(const EmbeddingBatch& image, const EmbeddingBatch& text,
                         const LogitScale& scale, const LossWeights& weights);
LossBreakdown CyclipLoss(const Matrix& image, const Matrix& text, const LogitScale& scale,
                         const LossWeights& weights);

}  // namespace cyclip

#endif  // CYCLIP_LOSSES_H_
