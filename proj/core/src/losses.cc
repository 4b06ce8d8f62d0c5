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

#include "cyclip/losses.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "cyclip/error.h"

namespace cyclip {
namespace {

void CheckPair(const Matrix& image, const Matrix& text) {
  if (image.rows() != text.rows() || image.cols() != text.cols()) {
    throw Error(ErrorCode::kBatchMismatch,
                "image batch " + std::to_string(image.rows()) + "x" +
                    std::to_string(image.cols()) + " vs text batch " +
                    std::to_string(text.rows()) + "x" + std::to_string(text.cols()));
  }
  if (image.rows() == 0) throw Error(ErrorCode::kDegenerateBatch, "empty batch");
}

}  // namespace

double LogitScale::multiplier() const { return std::exp(value); }
double LogitScale::temperature() const { return std::exp(-value); }
void LogitScale::Clamp() { value = std::min(std::max(value, kMin), kMax); }

std::string_view VariantName(Variant v) {
  switch (v) {
    case Variant::kClip: return "clip";
    case Variant::kCyclip: return "cyclip";
    case Variant::kICyclip: return "i-cyclip";
    case Variant::kCCyclip: return "c-cyclip";
  }
  return "clip";
}

std::optional<Variant> ParseVariant(std::string_view name) {
  for (Variant v : {Variant::kClip, Variant::kCyclip, Variant::kICyclip, Variant::kCCyclip}) {
    if (VariantName(v) == name) return v;
  }
  return std::nullopt;
}

LossWeights LossWeights::For(Variant v) {
  switch (v) {
    case Variant::kClip: return {0.0, 0.0};
    case Variant::kCyclip: return {0.25, 0.25};
    case Variant::kICyclip: return {0.5, 0.0};
    case Variant::kCCyclip: return {0.0, 0.5};
  }
  return {};
}

LossTerm ClipLoss(const Matrix& image, const Matrix& text, const LogitScale& scale) {
  CheckPair(image, text);
  const std::size_t n = image.rows();
  const double mult = scale.multiplier();
  const Matrix sim = SimilarityMatrix(image, text);
  Matrix logits = sim;
  logits *= mult;

  // dL/dlogits = (P_row - Id + P_col - Id) / 2N
  const double inv2n = 1.0 / (2.0 * static_cast<double>(n));
  Matrix grad_logits(n, n);
  double value = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double lse = LogSumExp(logits.row(j));
    value += lse - logits(j, j);
    for (std::size_t k = 0; k < n; ++k) {
      grad_logits(j, k) += std::exp(logits(j, k) - lse) * inv2n;
    }
    grad_logits(j, j) -= inv2n;
  }
  Vector column(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) column[j] = logits(j, k);
    const double lse = LogSumExp(column);
    value += lse - logits(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      grad_logits(j, k) += std::exp(column[j] - lse) * inv2n;
    }
    grad_logits(k, k) -= inv2n;
  }

  LossTerm out;
  out.value = value * inv2n;
  double grad_s = 0.0;
  for (std::size_t i = 0; i < n * n; ++i) {
    grad_s += grad_logits.values()[i] * logits.values()[i];
  }
  out.grad_logit_scale = grad_s;
  Matrix grad_sim = grad_logits;
  grad_sim *= mult;
  out.grad_image = MatMul(grad_sim, text);
  out.grad_text = MatMulTransposedA(grad_sim, image);
  return out;
}

LossTerm ClipLoss(const EmbeddingBatch& image, const EmbeddingBatch& text,
                  const LogitScale& scale) {
  return ClipLoss(image.vectors(), text.vectors(), scale);
}

LossTerm CrossModalCyclicLoss(const Matrix& image, const Matrix& text) {
  CheckPair(image, text);
  const std::size_t n = image.rows();
  const double inv_n = 1.0 / static_cast<double>(n);
  const Matrix sim = SimilarityMatrix(image, text);
  // gap = S - S^T; dL/dS = 4 gap / N.
  Matrix grad_sim(n, n);
  double value = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const double gap = sim(j, k) - sim(k, j);
      value += gap * gap;
      grad_sim(j, k) = 4.0 * gap * inv_n;
    }
  }
  LossTerm out;
  out.value = value * inv_n;
  out.grad_image = MatMul(grad_sim, text);
  out.grad_text = MatMulTransposedA(grad_sim, image);
  return out;
}

LossTerm CrossModalCyclicLoss(const EmbeddingBatch& image, const EmbeddingBatch& text) {
  return CrossModalCyclicLoss(image.vectors(), text.vectors());
}

LossTerm InModalCyclicLoss(const Matrix& image, const Matrix& text) {
  CheckPair(image, text);
  const std::size_t n = image.rows();
  const double inv_n = 1.0 / static_cast<double>(n);
  const Matrix image_sim = SimilarityMatrix(image, image);
  const Matrix text_sim = SimilarityMatrix(text, text);
  // D = A - B (both symmetric); dI = 4 D I / N, dT = -4 D T / N.
  Matrix diff(n, n);
  double value = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const double gap = image_sim(j, k) - text_sim(k, j);
      value += gap * gap;
      diff(j, k) = gap;
    }
  }
  LossTerm out;
  out.value = value * inv_n;
  out.grad_image = MatMul(diff, image);
  out.grad_image *= 4.0 * inv_n;
  out.grad_text = MatMul(diff, text);
  out.grad_text *= -4.0 * inv_n;
  return out;
}

LossTerm InModalCyclicLoss(const EmbeddingBatch& image, const EmbeddingBatch& text) {
  return InModalCyclicLoss(image.vectors(), text.vectors());
}

LossBreakdown CyclipLoss(const Matrix& image, const Matrix& text, const LogitScale& scale,
                         const LossWeights& weights) {
  if (weights.lambda1 < 0.0 || weights.lambda2 < 0.0) {
    throw Error(ErrorCode::kBadConfig, "loss weights must be nonnegative");
  }
  LossTerm clip = ClipLoss(image, text, scale);
  LossTerm in_modal = InModalCyclicLoss(image, text);
  LossTerm cross_modal = CrossModalCyclicLoss(image, text);

  LossBreakdown out;
  out.clip_loss = clip.value;
  out.in_modal_loss = in_modal.value;
  out.cross_modal_loss = cross_modal.value;
  out.total = clip.value + weights.lambda1 * in_modal.value +
              weights.lambda2 * cross_modal.value;
  out.grad_image_embeddings = std::move(clip.grad_image);
  out.grad_image_embeddings.AddScaled(in_modal.grad_image, weights.lambda1);
  out.grad_image_embeddings.AddScaled(cross_modal.grad_image, weights.lambda2);
  out.grad_text_embeddings = std::move(clip.grad_text);
  out.grad_text_embeddings.AddScaled(in_modal.grad_text, weights.lambda1);
  out.grad_text_embeddings.AddScaled(cross_modal.grad_text, weights.lambda2);
  out.grad_logit_scale = clip.grad_logit_scale;
  return out;
}

LossBreakdown CyclipLoss(const EmbeddingBatch& image, const EmbeddingBatch& text,
                         const LogitScale& scale, const LossWeights& weights) {
  return CyclipLoss(image.vectors(), text.vectors(), scale, weights);
}

}  // namespace cyclip
