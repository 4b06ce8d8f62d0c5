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

#include "cyclip/evaluation.h"

#include <algorithm>

#include "cyclip/error.h"

namespace cyclip {

EncodedSplit EncodeSplit(const CyclipModel& model, const DataSplit& split) {
  return {model.image_encoder.Embed(split.image_features),
          model.text_encoder.Embed(split.text_features), split.subclasses,
          split.superclasses};
}

EvaluationContext PrepareEvaluation(const CyclipModel& model, const SyntheticDataset& ds) {
  return {EncodeSplit(model, ds.train), EncodeSplit(model, ds.test),
          BuildClassEmbeddings(model, ds), ds.hierarchy};
}

double CrossModalGapStatistic(const EmbeddingBatch& image, const EmbeddingBatch& text,
                              std::size_t batch_size) {
  if (image.count() != text.count() || image.dim() != text.dim()) {
    throw Error(ErrorCode::kBatchMismatch, "gap statistic batch shapes differ");
  }
  if (image.count() == 0 || batch_size == 0) {
    throw Error(ErrorCode::kDegenerateBatch, "gap statistic needs rows and a batch size");
  }
  const std::size_t b = std::min(batch_size, image.count());
  const std::size_t batches = image.count() / b;
  double total = 0.0;
  for (std::size_t start = 0; start < batches * b; start += b) {
    double sum = 0.0;
    for (std::size_t j = start; j < start + b; ++j) {
      for (std::size_t k = start; k < start + b; ++k) {
        const double gap = Dot(image.row(j), text.row(k)) - Dot(image.row(k), text.row(j));
        sum += gap * gap;
      }
    }
    total += sum;
  }
  return total / static_cast<double>(batches);
}

std::vector<double> ZeroShotTopK(const EvaluationContext& ctx,
                                 std::span<const std::size_t> ks) {
  std::vector<double> out;
  for (std::size_t k : ks) {
    out.push_back(TopKAccuracy(ctx.test.images, ctx.test.subclasses, ctx.classes, k));
  }
  return out;
}

std::vector<double> ConsistencyAtK(const EvaluationContext& ctx,
                                   std::span<const std::size_t> ks) {
  const LabeledEmbeddings train{ctx.train.images, ctx.train.subclasses};
  std::vector<double> out;
  for (std::size_t k : ks) {
    out.push_back(ConsistencyScore(ctx.test.images, train, ctx.classes, k));
  }
  return out;
}

GeometryReport Geometry(const EvaluationContext& ctx, std::size_t gap_batch_size) {
  return {Alignment(ctx.test.images, ctx.test.texts),
          Uniformity(ctx.test.images, ctx.test.texts),
          CrossModalGapStatistic(ctx.test.images, ctx.test.texts, gap_batch_size)};
}

GrainedReport Grained(const EvaluationContext& ctx) {
  const HierarchicalTestSet test{ctx.test.images, ctx.test.subclasses, ctx.test.superclasses};
  return {FineGrainedAccuracy(test, ctx.classes, ctx.hierarchy),
          CoarseGrainedAccuracy(test, ctx.classes, ctx.hierarchy)};
}

double ProbeAccuracy(const EvaluationContext& ctx, const LinearProbeConfig& cfg) {
  return LinearProbe({ctx.train.images, ctx.train.subclasses},
                     {ctx.test.images, ctx.test.subclasses}, cfg);
}

}  // namespace cyclip
