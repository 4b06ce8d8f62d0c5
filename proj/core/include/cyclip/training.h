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

// The optimization loop: encode both views of each minibatch, evaluate the
// combined loss, backpropagate through both encoders and take an Adam step.
// A run is a pure function of (dataset, config).

#ifndef CYCLIP_TRAINING_H_
#define CYCLIP_TRAINING_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cyclip/datagen.h"
#include "cyclip/losses.h"
#include "cyclip/model.h"
#include "cyclip/optim.h"

namespace cyclip {

struct TrainConfig {
  Variant variant = Variant::kClip;
  LossWeights weights = LossWeights::For(Variant::kClip);
  std::size_t epochs = 30;
  std::size_t batch_size = 64;
  double base_lr = 0.0005;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.99;
  double adam_eps = 1e-8;
  double weight_decay = 0.1;
  std::uint64_t warmup_steps = 200;
  std::uint64_t seed = 0;
  std::size_t hidden_dim = 64;
  std::size_t embed_dim = 32;
  double init_logit_scale = LogitScale::kDefault;

  // Sets `variant` and resets the weights to that variant's lambdas.
  void SetVariant(Variant v);
  AdamConfig adam() const;
  void Validate() const;

  bool operator==(const TrainConfig& other) const = default;
};

struct TrainLogEntry {
  std::uint64_t step = 0;
  std::size_t epoch = 0;
  double lr = 0.0;
  double clip_loss = 0.0;
  double in_modal_loss = 0.0;
  double cross_modal_loss = 0.0;
  double total = 0.0;
  double logit_scale = 0.0;
};

struct TrainResult {
  CyclipModel model;
  std::vector<TrainLogEntry> log;
};

// Minibatches per epoch; the incomplete tail batch is dropped.
std::size_t BatchesPerEpoch(std::size_t train_size, std::size_t batch_size);

// Learning rate for 0-based update `step` of a run with `total_steps`.
double LrAt(std::uint64_t step, std::uint64_t total_steps, const TrainConfig& cfg);

// Gradients of the combined loss on one batch w.r.t. every model parameter.
struct ModelGradients {
  LossBreakdown loss;
  ParamGradients image;
  ParamGradients text;
};
ModelGradients ComputeGradients(const CyclipModel& model, const Matrix& image_features,
                                const Matrix& text_features, const LossWeights& weights);

// Throws kNonFiniteLoss naming the offending step.
TrainResult Train(const DataSplit& train, const TrainConfig& cfg);
TrainResult Train(const SyntheticDataset& ds, const TrainConfig& cfg);

}  // namespace cyclip

#endif  // CYCLIP_TRAINING_H_
