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

#include "cyclip/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cyclip/error.h"
#include "cyclip/optim.h"
#include "cyclip/rng.h"

namespace cyclip {
namespace {

void CheckDim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::kDimMismatch, std::string(what) + ": " + std::to_string(a) +
                                             " != " + std::to_string(b));
  }
}

void CheckHierarchicalTest(const HierarchicalTestSet& test,
                           const ClassTextEmbeddings& classes, const ClassHierarchy& h) {
  if (test.subclasses.size() != test.images.count() ||
      test.superclasses.size() != test.images.count()) {
    throw Error(ErrorCode::kBatchMismatch, "test triplet columns differ in length");
  }
  if (test.images.count() == 0) throw Error(ErrorCode::kEmptySplit, "empty test set");
  CheckDim(classes.count(), h.num_subclasses(), "class embeddings vs hierarchy");
  CheckDim(classes.dim(), test.images.dim(), "class vs image dim");
  for (std::size_t j = 0; j < test.subclasses.size(); ++j) {
    const std::size_t c = test.subclasses[j];
    if (c >= h.num_subclasses() || h.parent(c) != test.superclasses[j]) {
      throw Error(ErrorCode::kHierarchyViolation,
                  "row " + std::to_string(j) + " superclass is not F(subclass)");
    }
  }
}

}  // namespace

void LabeledEmbeddings::Validate() const {
  if (labels.size() != embeddings.count()) {
    throw Error(ErrorCode::kBatchMismatch, "label count " + std::to_string(labels.size()) +
                                               " != row count " +
                                               std::to_string(embeddings.count()));
  }
}

Vector ClassTextEmbedding(const EmbeddingBatch& prompt_embeddings) {
  if (prompt_embeddings.count() == 0) {
    throw Error(ErrorCode::kEmptySplit, "no prompt embeddings");
  }
  Vector mean(prompt_embeddings.dim(), 0.0);
  for (std::size_t i = 0; i < prompt_embeddings.count(); ++i) {
    const Vector unit = L2Normalize(prompt_embeddings.row(i));
    for (std::size_t c = 0; c < mean.size(); ++c) mean[c] += unit[c];
  }
  for (double& x : mean) x /= static_cast<double>(prompt_embeddings.count());
  return L2Normalize(mean);
}

std::size_t ZeroShotPredict(std::span<const double> image_embedding,
                            const ClassTextEmbeddings& classes) {
  CheckDim(image_embedding.size(), classes.dim(), "zero-shot dim");
  if (classes.count() == 0) throw Error(ErrorCode::kEmptySplit, "no classes");
  std::size_t best = 0;
  double best_sim = Dot(image_embedding, classes.row(0));
  for (std::size_t c = 1; c < classes.count(); ++c) {
    const double sim = Dot(image_embedding, classes.row(c));
    if (sim > best_sim) {
      best_sim = sim;
      best = c;
    }
  }
  return best;
}

std::vector<std::size_t> TopKClasses(std::span<const double> image_embedding,
                                     const ClassTextEmbeddings& classes, std::size_t k) {
  CheckDim(image_embedding.size(), classes.dim(), "top-k dim");
  if (k == 0 || k > classes.count()) {
    throw Error(ErrorCode::kBadK, "k=" + std::to_string(k) + " with " +
                                      std::to_string(classes.count()) + " classes");
  }
  Vector sims(classes.count());
  for (std::size_t c = 0; c < classes.count(); ++c) {
    sims[c] = Dot(image_embedding, classes.row(c));
  }
  std::vector<std::size_t> order(classes.count());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return sims[a] != sims[b] ? sims[a] > sims[b] : a < b;
                    });
  order.resize(k);
  return order;
}

std::size_t KnnPredict(const LabeledEmbeddings& train, std::span<const double> query,
                       std::size_t k) {
  train.Validate();
  const std::size_t n = train.embeddings.count();
  if (n == 0) throw Error(ErrorCode::kEmptyTrainSet, "kNN over an empty training set");
  if (k == 0 || k > n) {
    throw Error(ErrorCode::kBadK,
                "k=" + std::to_string(k) + " with " + std::to_string(n) + " training rows");
  }
  CheckDim(query.size(), train.embeddings.dim(), "kNN dim");

  Vector sims(n);
  for (std::size_t i = 0; i < n; ++i) sims[i] = Dot(query, train.embeddings.row(i));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return sims[a] != sims[b] ? sims[a] > sims[b] : a < b;
                    });

  struct Tally {
    std::size_t label;
    std::size_t votes;
    double nearest;
  };
  std::vector<Tally> tallies;
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t label = train.labels[order[r]];
    auto it = std::find_if(tallies.begin(), tallies.end(),
                           [&](const Tally& t) { return t.label == label; });
    if (it == tallies.end()) {
      // Neighbors arrive in descending similarity, so the first hit is the nearest.
      tallies.push_back({label, 1, sims[order[r]]});
    } else {
      ++it->votes;
    }
  }
  const Tally* best = &tallies.front();
  for (const Tally& t : tallies) {
    if (t.votes != best->votes) {
      if (t.votes > best->votes) best = &t;
    } else if (t.nearest != best->nearest) {
      if (t.nearest > best->nearest) best = &t;
    } else if (t.label < best->label) {
      best = &t;
    }
  }
  return best->label;
}

double ConsistencyScore(const EmbeddingBatch& test_images, const LabeledEmbeddings& train,
                        const ClassTextEmbeddings& classes, std::size_t k) {
  if (test_images.count() == 0) throw Error(ErrorCode::kEmptySplit, "empty test set");
  std::size_t agree = 0;
  for (std::size_t j = 0; j < test_images.count(); ++j) {
    const auto row = test_images.row(j);
    if (KnnPredict(train, row, k) == ZeroShotPredict(row, classes)) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(test_images.count());
}

double Alignment(const EmbeddingBatch& image, const EmbeddingBatch& text) {
  if (image.count() != text.count() || image.dim() != text.dim()) {
    throw Error(ErrorCode::kBatchMismatch, "alignment batch shapes differ");
  }
  if (image.count() == 0) throw Error(ErrorCode::kDegenerateBatch, "empty batch");
  double sum = 0.0;
  for (std::size_t j = 0; j < image.count(); ++j) sum += Dot(image.row(j), text.row(j));
  return sum / static_cast<double>(image.count());
}

double Uniformity(const EmbeddingBatch& image, const EmbeddingBatch& text) {
  if (image.count() != text.count() || image.dim() != text.dim()) {
    throw Error(ErrorCode::kBatchMismatch, "uniformity batch shapes differ");
  }
  const std::size_t n = image.count();
  if (n < 2) throw Error(ErrorCode::kDegenerateBatch, "uniformity needs N >= 2");
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j != k) sum += std::exp(-Dot(image.row(j), text.row(k)));
    }
  }
  return std::log(sum / static_cast<double>(n * (n - 1)));
}

double FineGrainedAccuracy(const HierarchicalTestSet& test,
                           const ClassTextEmbeddings& classes, const ClassHierarchy& h) {
  CheckHierarchicalTest(test, classes, h);
  std::size_t correct = 0;
  for (std::size_t j = 0; j < test.images.count(); ++j) {
    const auto& candidates = h.children(test.superclasses[j]);
    std::size_t best = candidates.front();
    double best_sim = Dot(test.images.row(j), classes.row(best));
    for (std::size_t c : candidates) {
      const double sim = Dot(test.images.row(j), classes.row(c));
      if (sim > best_sim || (sim == best_sim && c < best)) {
        best_sim = sim;
        best = c;
      }
    }
    if (best == test.subclasses[j]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.images.count());
}

double CoarseGrainedAccuracy(const HierarchicalTestSet& test,
                             const ClassTextEmbeddings& classes, const ClassHierarchy& h) {
  CheckHierarchicalTest(test, classes, h);
  std::size_t correct = 0;
  for (std::size_t j = 0; j < test.images.count(); ++j) {
    const std::size_t predicted = ZeroShotPredict(test.images.row(j), classes);
    if (h.parent(predicted) == test.superclasses[j]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.images.count());
}

double TopKAccuracy(const EmbeddingBatch& test_images, std::span<const std::size_t> labels,
                    const ClassTextEmbeddings& classes, std::size_t k) {
  if (labels.size() != test_images.count()) {
    throw Error(ErrorCode::kBatchMismatch, "label count differs from image count");
  }
  if (test_images.count() == 0) throw Error(ErrorCode::kEmptySplit, "empty test set");
  std::size_t hits = 0;
  for (std::size_t j = 0; j < test_images.count(); ++j) {
    const auto top = TopKClasses(test_images.row(j), classes, k);
    if (std::find(top.begin(), top.end(), labels[j]) != top.end()) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(test_images.count());
}

double LinearProbe(const LabeledEmbeddings& train, const LabeledEmbeddings& test,
                   const LinearProbeConfig& cfg) {
  train.Validate();
  test.Validate();
  if (train.embeddings.count() == 0 || test.embeddings.count() == 0) {
    throw Error(ErrorCode::kEmptySplit, "linear probe needs nonempty train and test splits");
  }
  CheckDim(train.embeddings.dim(), test.embeddings.dim(), "probe train vs test dim");
  if (cfg.batch_size == 0) throw Error(ErrorCode::kBadConfig, "probe batch size is 0");

  const std::size_t dim = train.embeddings.dim();
  // One output per distinct training label; unseen test labels always miss.
  std::vector<std::size_t> classes = train.labels;
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  const std::size_t num_classes = classes.size();
  const auto class_index = [&](std::size_t label) {
    return static_cast<std::size_t>(std::lower_bound(classes.begin(), classes.end(), label) -
                                    classes.begin());
  };

  Matrix weight(num_classes, dim);
  Vector bias(num_classes, 0.0);
  Matrix grad_weight(num_classes, dim);
  Vector grad_bias(num_classes, 0.0);
  const ParamTensor params[] = {
      {weight.values(), grad_weight.values(), false, std::nullopt},
      {bias, grad_bias, true, std::nullopt},
  };
  const AdamConfig adam{0.9, 0.999, 1e-8, cfg.weight_decay};
  OptimizerState state;

  const std::size_t n = train.embeddings.count();
  const std::size_t batches = (n + cfg.batch_size - 1) / cfg.batch_size;
  const std::uint64_t total_steps = cfg.epochs * batches;
  Rng rng = Rng::Stream(cfg.seed, /*stream=*/17);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Vector probs(num_classes);

  std::uint64_t step = 0;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.Shuffle(order);
    for (std::size_t start = 0; start < n; start += cfg.batch_size) {
      const std::size_t end = std::min(n, start + cfg.batch_size);
      const double inv_b = 1.0 / static_cast<double>(end - start);
      std::fill(grad_weight.values().begin(), grad_weight.values().end(), 0.0);
      std::fill(grad_bias.begin(), grad_bias.end(), 0.0);
      for (std::size_t i = start; i < end; ++i) {
        const auto x = train.embeddings.row(order[i]);
        for (std::size_t c = 0; c < num_classes; ++c) {
          probs[c] = Dot(weight.row(c), x) + bias[c];
        }
        const double lse = LogSumExp(probs);
        for (double& p : probs) p = std::exp(p - lse);
        probs[class_index(train.labels[order[i]])] -= 1.0;
        for (std::size_t c = 0; c < num_classes; ++c) {
          const double g = probs[c] * inv_b;
          grad_bias[c] += g;
          auto gw = grad_weight.row(c);
          for (std::size_t f = 0; f < dim; ++f) gw[f] += g * x[f];
        }
      }
      const double lr = WarmupCosineLr(step, 0, total_steps, cfg.learning_rate);
      AdamStep(params, state, lr, adam);
      ++step;
    }
  }

  std::size_t correct = 0;
  for (std::size_t j = 0; j < test.embeddings.count(); ++j) {
    const auto x = test.embeddings.row(j);
    std::size_t best = 0;
    double best_score = Dot(weight.row(0), x) + bias[0];
    for (std::size_t c = 1; c < num_classes; ++c) {
      const double score = Dot(weight.row(c), x) + bias[c];
      if (score > best_score) {
        best_score = score;
        best = c;
      }
    }
    if (classes[best] == test.labels[j]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.embeddings.count());
}

}  // namespace cyclip
