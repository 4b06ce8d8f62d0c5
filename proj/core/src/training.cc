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

#include "cyclip/training.h"

#include <cmath>
#include <numeric>
#include <string>

#include "cyclip/error.h"
#include "cyclip/rng.h"

namespace cyclip {
namespace {

constexpr std::uint64_t kShuffleStream = 3;

Matrix GatherRows(const Matrix& src, std::span<const std::size_t> rows) {
  Matrix out(rows.size(), src.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.SetRow(i, src.row(rows[i]));
  return out;
}

void AppendEncoderTensors(MlpEncoder& enc, const ParamGradients& grads,
                          std::vector<ParamTensor>& out) {
  auto& layers = enc.mutable_layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    out.push_back({layers[l].weight.values(), grads.layers[l].weight.values(), false, {}});
    // Biases are decay-exempt. The encoders have no norm layers, so that
    // part of the exemption list never applies.
    out.push_back({layers[l].bias, grads.layers[l].bias, true, {}});
  }
}

}  // namespace

void TrainConfig::SetVariant(Variant v) {
  variant = v;
  weights = LossWeights::For(v);
}

AdamConfig TrainConfig::adam() const {
  return {adam_beta1, adam_beta2, adam_eps, weight_decay};
}

void TrainConfig::Validate() const {
  if (batch_size < 2) throw Error(ErrorCode::kBadConfig, "batch_size must be >= 2");
  if (hidden_dim == 0 || embed_dim == 0) {
    throw Error(ErrorCode::kBadConfig, "encoder widths must be positive");
  }
  if (!(base_lr >= 0.0) || !(weight_decay >= 0.0) || !(adam_eps > 0.0)) {
    throw Error(ErrorCode::kBadConfig, "lr, weight_decay must be >= 0 and eps > 0");
  }
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) {
    throw Error(ErrorCode::kBadConfig, "Adam betas must lie in [0, 1)");
  }
  if (!(weights.lambda1 >= 0.0) || !(weights.lambda2 >= 0.0)) {
    throw Error(ErrorCode::kBadConfig, "loss weights must be nonnegative");
  }
}

std::size_t BatchesPerEpoch(std::size_t train_size, std::size_t batch_size) {
  return batch_size == 0 ? 0 : train_size / batch_size;
}

double LrAt(std::uint64_t step, std::uint64_t total_steps, const TrainConfig& cfg) {
  return WarmupCosineLr(step, cfg.warmup_steps, total_steps, cfg.base_lr);
}

ModelGradients ComputeGradients(const CyclipModel& model, const Matrix& image_features,
                                const Matrix& text_features, const LossWeights& weights) {
  auto image = model.image_encoder.Encode(image_features);
  auto text = model.text_encoder.Encode(text_features);
  ModelGradients out;
  out.loss = CyclipLoss(image.embeddings, text.embeddings, model.logit_scale, weights);
  out.image = model.image_encoder.Backward(image.tape, out.loss.grad_image_embeddings);
  out.text = model.text_encoder.Backward(text.tape, out.loss.grad_text_embeddings);
  out.image.logit_scale = out.loss.grad_logit_scale;
  out.text.logit_scale = out.loss.grad_logit_scale;
  return out;
}

TrainResult Train(const DataSplit& train, const TrainConfig& cfg) {
  cfg.Validate();
  const std::size_t n = train.size();
  if (n == 0) throw Error(ErrorCode::kEmptySplit, "empty training split");
  if (cfg.batch_size > n) {
    throw Error(ErrorCode::kBadConfig, "batch_size " + std::to_string(cfg.batch_size) +
                                           " exceeds training size " + std::to_string(n));
  }

  TrainResult result;
  result.model = CyclipModel::Init(train.image_features.cols(), train.text_features.cols(),
                                   cfg.hidden_dim, cfg.embed_dim, cfg.seed);
  CyclipModel& model = result.model;
  model.logit_scale.value = cfg.init_logit_scale;
  model.logit_scale.Clamp();

  const std::size_t batches = BatchesPerEpoch(n, cfg.batch_size);
  const std::uint64_t total_steps = static_cast<std::uint64_t>(cfg.epochs) * batches;
  const AdamConfig adam = cfg.adam();
  OptimizerState state;
  Rng shuffle = Rng::Stream(cfg.seed, kShuffleStream);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  std::uint64_t step = 0;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle.Shuffle(order);
    for (std::size_t b = 0; b < batches; ++b) {
      const std::span<const std::size_t> rows(order.data() + b * cfg.batch_size,
                                              cfg.batch_size);
      ModelGradients g;
      try {
        g = ComputeGradients(model, GatherRows(train.image_features, rows),
                             GatherRows(train.text_features, rows), cfg.weights);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNonFiniteValue) throw;
        throw Error(ErrorCode::kNonFiniteLoss,
                    "non-finite loss at step " + std::to_string(step) + ": " + e.what());
      }
      if (!std::isfinite(g.loss.total)) {
        throw Error(ErrorCode::kNonFiniteLoss,
                    "non-finite loss at step " + std::to_string(step));
      }
      const double lr = LrAt(step, total_steps, cfg);
      result.log.push_back({step, epoch, lr, g.loss.clip_loss, g.loss.in_modal_loss,
                            g.loss.cross_modal_loss, g.loss.total, model.logit_scale.value});

      std::vector<ParamTensor> tensors;
      AppendEncoderTensors(model.image_encoder, g.image, tensors);
      AppendEncoderTensors(model.text_encoder, g.text, tensors);
      const double grad_s = g.loss.grad_logit_scale;
      tensors.push_back({std::span<double>(&model.logit_scale.value, 1),
                         std::span<const double>(&grad_s, 1), true,
                         Bounds{LogitScale::kMin, LogitScale::kMax}});
      AdamStep(tensors, state, lr, adam);
      ++step;
    }
  }
  return result;
}

TrainResult Train(const SyntheticDataset& ds, const TrainConfig& cfg) {
  return Train(ds.train, cfg);
}

}  // namespace cyclip
