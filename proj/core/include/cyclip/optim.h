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

// Adam with decoupled weight decay, plus the learning-rate schedules.

#ifndef CYCLIP_OPTIM_H_
#define CYCLIP_OPTIM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cyclip/linalg.h"

namespace cyclip {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.99;
  double eps = 1e-8;
  double weight_decay = 0.1;
};

struct Bounds {
  double lo;
  double hi;
};

// One parameter tensor and its gradient. Exempt tensors (biases, the
// logit scale) never see weight decay; `clamp` is applied after the update.
struct ParamTensor {
  std::span<double> values;
  std::span<const double> grads;
  bool decay_exempt = false;
  std::optional<Bounds> clamp;
};

struct OptimizerState {
  std::vector<Vector> first_moment;
  std::vector<Vector> second_moment;
  std::vector<bool> decay_exempt;
  std::uint64_t step = 0;
};

// One bias-corrected Adam update of every tensor, followed by
// p <- p - lr * weight_decay * p on non-exempt tensors. The state is sized
// on the first call; later calls with different shapes throw kShapeMismatch.
void AdamStep(std::span<const ParamTensor> params, OptimizerState& state, double lr,
              const AdamConfig& cfg);

// Linear warmup to base_lr over `warmup_steps`, then half-cosine decay to 0
// at `total_steps`. Throws kBadStep outside [0, total_steps].
double WarmupCosineLr(std::uint64_t step, std::uint64_t warmup_steps,
                      std::uint64_t total_steps, double base_lr);

}  // namespace cyclip

#endif  // CYCLIP_OPTIM_H_
