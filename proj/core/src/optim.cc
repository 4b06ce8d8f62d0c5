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

#include "cyclip/optim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cyclip/error.h"

namespace cyclip {

void AdamStep(std::span<const ParamTensor> params, OptimizerState& state, double lr,
              const AdamConfig& cfg) {
  if (!(lr >= 0.0)) throw Error(ErrorCode::kBadConfig, "learning rate must be >= 0");
  if (state.step == 0 && state.first_moment.empty()) {
    for (const auto& p : params) {
      state.first_moment.emplace_back(p.values.size(), 0.0);
      state.second_moment.emplace_back(p.values.size(), 0.0);
      state.decay_exempt.push_back(p.decay_exempt);
    }
  }
  if (state.first_moment.size() != params.size()) {
    throw Error(ErrorCode::kShapeMismatch, "optimizer state tensor count");
  }
  for (std::size_t t = 0; t < params.size(); ++t) {
    if (params[t].values.size() != params[t].grads.size() ||
        params[t].values.size() != state.first_moment[t].size()) {
      throw Error(ErrorCode::kShapeMismatch, "tensor " + std::to_string(t) + " shape");
    }
  }

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(cfg.beta1, t);
  const double correction2 = 1.0 - std::pow(cfg.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const ParamTensor& p = params[i];
    Vector& m = state.first_moment[i];
    Vector& v = state.second_moment[i];
    const double decay = p.decay_exempt ? 0.0 : lr * cfg.weight_decay;
    for (std::size_t j = 0; j < p.values.size(); ++j) {
      const double g = p.grads[j];
      m[j] = cfg.beta1 * m[j] + (1.0 - cfg.beta1) * g;
      v[j] = cfg.beta2 * v[j] + (1.0 - cfg.beta2) * g * g;
      const double m_hat = m[j] / correction1;
      const double v_hat = v[j] / correction2;
      const double before = p.values[j];
      p.values[j] = before - lr * m_hat / (std::sqrt(v_hat) + cfg.eps) - decay * before;
    }
    if (p.clamp) {
      for (double& x : p.values) x = std::clamp(x, p.clamp->lo, p.clamp->hi);
    }
  }
}

double WarmupCosineLr(std::uint64_t step, std::uint64_t warmup_steps,
                      std::uint64_t total_steps, double base_lr) {
  if (step > total_steps) {
    throw Error(ErrorCode::kBadStep, "step " + std::to_string(step) + " beyond " +
                                         std::to_string(total_steps));
  }
  if (step < warmup_steps) {
    return base_lr * static_cast<double>(step) / static_cast<double>(warmup_steps);
  }
  if (total_steps == warmup_steps) return base_lr;
  const double progress = static_cast<double>(step - warmup_steps) /
                          static_cast<double>(total_steps - warmup_steps);
  return base_lr * 0.5 * (1.0 + std::cos(std::numbers::pi * progress));
}

}  // namespace cyclip
