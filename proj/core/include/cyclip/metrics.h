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

// Embedding-space diagnostics: zero-shot and kNN predictors, the
// consistency score between them, hypersphere alignment/uniformity,
// hierarchy-aware accuracies, top-K accuracy and linear probing.
//
// Similarity is the inner product throughout; on unit vectors this orders
// candidates exactly as cosine distance does. All argmax-style choices
// break ties toward the smaller id.

#ifndef CYCLIP_METRICS_H_
#define CYCLIP_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cyclip/embedding.h"
#include "cyclip/hierarchy.h"
#include "cyclip/linalg.h"

namespace cyclip {

// One unit-norm row per subclass.
using ClassTextEmbeddings = EmbeddingBatch;

struct LabeledEmbeddings {
  EmbeddingBatch embeddings;
  std::vector<std::size_t> labels;

  // Throws kBatchMismatch when label and row counts differ.
  void Validate() const;
};

// Test triplets (image embedding, subclass, superclass).
struct HierarchicalTestSet {
  EmbeddingBatch images;
  std::vector<std::size_t> subclasses;
  std::vector<std::size_t> superclasses;
};

// Normalize each prompt embedding, average, normalize again.
Vector ClassTextEmbedding(const EmbeddingBatch& prompt_embeddings);

std::size_t ZeroShotPredict(std::span<const double> image_embedding,
                            const ClassTextEmbeddings& classes);

// Class ids sorted by descending similarity (ties by id), first k of them.
std::vector<std::size_t> TopKClasses(std::span<const double> image_embedding,
                                     const ClassTextEmbeddings& classes, std::size_t k);

// Majority vote among the k most similar training rows. Neighbor ties go
// to the lower row index; vote ties go to the label whose nearest member is
// most similar, then to the smaller label.
std::size_t KnnPredict(const LabeledEmbeddings& train, std::span<const double> query,
                       std::size_t k);

// Fraction of test rows where KnnPredict agrees with ZeroShotPredict.
double ConsistencyScore(const EmbeddingBatch& test_images, const LabeledEmbeddings& train,
                        const ClassTextEmbeddings& classes, std::size_t k);

// Mean <I_j, T_j>.
double Alignment(const EmbeddingBatch& image, const EmbeddingBatch& text);

// log of the mean of exp(-<I_j, T_k>) over j != k. Needs N >= 2.
double Uniformity(const EmbeddingBatch& image, const EmbeddingBatch& text);

// Argmax restricted to the children of the true superclass.
double FineGrainedAccuracy(const HierarchicalTestSet& test,
                           const ClassTextEmbeddings& classes, const ClassHierarchy& h);

// Global argmax lands among the children of the true superclass.
double CoarseGrainedAccuracy(const HierarchicalTestSet& test,
                             const ClassTextEmbeddings& classes, const ClassHierarchy& h);

double TopKAccuracy(const EmbeddingBatch& test_images, std::span<const std::size_t> labels,
                    const ClassTextEmbeddings& classes, std::size_t k);

struct LinearProbeConfig {
  std::size_t epochs = 32;
  std::size_t batch_size = 16;
  double learning_rate = 0.005;
  double weight_decay = 0.01;
  std::uint64_t seed = 0;

  bool operator==(const LinearProbeConfig& other) const = default;
};

// Trains an affine softmax classifier on frozen train embeddings (Adam,
// cosine schedule, decay on the weight matrix only) and returns accuracy
// on the test split.
double LinearProbe(const LabeledEmbeddings& train, const LabeledEmbeddings& test,
                   const LinearProbeConfig& cfg);

}  // namespace cyclip

#endif  // CYCLIP_METRICS_H_
