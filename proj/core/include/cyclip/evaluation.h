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

// Runs the metric battery against a trained model on a synthetic dataset.

#ifndef CYCLIP_EVALUATION_H_
#define CYCLIP_EVALUATION_H_

#include <cstddef>
#include <span>
#include <vector>

#include "cyclip/datagen.h"
#include "cyclip/metrics.h"
#include "cyclip/model.h"

namespace cyclip {

struct EncodedSplit {
  EmbeddingBatch images;
  EmbeddingBatch texts;
  std::vector<std::size_t> subclasses;
  std::vector<std::size_t> superclasses;
};

EncodedSplit EncodeSplit(const CyclipModel& model, const DataSplit& split);

// Everything the metrics need, encoded once.
struct EvaluationContext {
  EncodedSplit train;
  EncodedSplit test;
  ClassTextEmbeddings classes;
  ClassHierarchy hierarchy;
};

EvaluationContext PrepareEvaluation(const CyclipModel& model, const SyntheticDataset& ds);

// Mean over consecutive size-`batch_size` test batches of
// sum_{j,k} (<I_j,T_k> - <I_k,T_j>)^2. The tail batch is dropped; a split
// smaller than one batch is treated as a single batch.
double CrossModalGapStatistic(const EmbeddingBatch& image, const EmbeddingBatch& text,
                              std::size_t batch_size);

struct GeometryReport {
  double alignment = 0.0;
  double uniformity = 0.0;
  double cross_modal_gap = 0.0;
};

struct GrainedReport {
  double fine = 0.0;
  double coarse = 0.0;
};

std::vector<double> ZeroShotTopK(const EvaluationContext& ctx, std::span<const std::size_t> ks);
std::vector<double> ConsistencyAtK(const EvaluationContext& ctx,
                                   std::span<const std::size_t> ks);
GeometryReport Geometry(const EvaluationContext& ctx, std::size_t gap_batch_size);
GrainedReport Grained(const EvaluationContext& ctx);
double ProbeAccuracy(const EvaluationContext& ctx, const LinearProbeConfig& cfg);

}  // namespace cyclip

#endif  // CYCLIP_EVALUATION_H_
