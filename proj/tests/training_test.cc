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

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cyclip/datagen.h"
#include "cyclip/error.h"
#include "cyclip/grad_check.h"
#include "cyclip/optim.h"
#include "cyclip/training.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace cyclip {
namespace {

template <typename Fn>
void ExpectError(ErrorCode code, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << ErrorCodeName(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code);
  }
}

SyntheticDataset TinyDataset() {
  GeneratorConfig cfg;
  cfg.num_superclasses = 2;
  cfg.children_per_parent = {2};
  cfg.latent_dim = 4;
  cfg.image_dim = 6;
  cfg.text_dim = 5;
  cfg.num_templates = 2;
  cfg.train_size = 40;
  cfg.test_size = 10;
  cfg.seed = 3;
  return SampleDataset(cfg);
}

TrainConfig TinyConfig(Variant v) {
  TrainConfig cfg;
  cfg.SetVariant(v);
  cfg.epochs = 3;
  cfg.batch_size = 8;
  cfg.warmup_steps = 4;
  cfg.hidden_dim = 8;
  cfg.embed_dim = 4;
  cfg.base_lr = 0.01;
  return cfg;
}

TEST(ScheduleTest, WarmupCosineExamples) {
  const double base = 0.0005;
  EXPECT_EQ(WarmupCosineLr(200, 200, 1000, base), base);
  EXPECT_NEAR(WarmupCosineLr(1000, 200, 1000, base), 0.0, 1e-20);
  EXPECT_NEAR(WarmupCosineLr(600, 200, 1000, base), base / 2, 1e-18);
  EXPECT_EQ(WarmupCosineLr(0, 200, 1000, base), 0.0);
  EXPECT_NEAR(WarmupCosineLr(50, 200, 1000, base), base / 4, 1e-18);
  EXPECT_EQ(WarmupCosineLr(0, 0, 10, base), base);
  ExpectError(ErrorCode::kBadStep, [&] { WarmupCosineLr(1001, 200, 1000, base); });
}

TEST(ScheduleTest, MonotoneAfterWarmup) {
  double prev = WarmupCosineLr(20, 20, 300, 1.0);
  for (std::uint64_t t = 21; t <= 300; ++t) {
    const double lr = WarmupCosineLr(t, 20, 300, 1.0);
    EXPECT_LE(lr, prev);
    prev = lr;
  }
}

TEST(AdamTest, FirstStepMovesByLearningRate) {
  double p = 1.0;
  const double g = 0.5;
  const ParamTensor params[] = {{std::span<double>(&p, 1), std::span<const double>(&g, 1), true,
                                 std::nullopt}};
  OptimizerState state;
  AdamStep(params, state, 0.0005, AdamConfig{});
  EXPECT_NEAR(p - 1.0, -0.0005, 1e-11);
  EXPECT_EQ(state.step, 1u);
}

TEST(AdamTest, ZeroGradientExemptAndDecayed) {
  Vector exempt{0.3, -2.0};
  Vector decayed{0.3, -2.0};
  const Vector zeros(2, 0.0);
  const ParamTensor params[] = {{exempt, zeros, true, std::nullopt},
                                {decayed, zeros, false, std::nullopt}};
  OptimizerState state;
  AdamStep(params, state, 0.0005, AdamConfig{});
  EXPECT_EQ(exempt, (Vector{0.3, -2.0}));
  EXPECT_NEAR(decayed[0], 0.3 * (1.0 - 0.0005 * 0.1), 1e-17);
  EXPECT_NEAR(decayed[1], -2.0 * (1.0 - 0.0005 * 0.1), 1e-16);
}

TEST(AdamTest, ClampAndShapeMismatch) {
  double s = 4.6;
  const double g = -1.0;
  const ParamTensor params[] = {{std::span<double>(&s, 1), std::span<const double>(&g, 1), true,
                                 Bounds{0.0, 4.6052}}};
  OptimizerState state;
  AdamStep(params, state, 0.1, AdamConfig{});
  EXPECT_EQ(s, 4.6052);
  Vector two(2, 0.0);
  const ParamTensor wrong[] = {{two, two, true, std::nullopt}};
  ExpectError(ErrorCode::kShapeMismatch, [&] { AdamStep(wrong, state, 0.1, AdamConfig{}); });
}

TEST(TrainConfigTest, DefaultsAndVariants) {
  const TrainConfig cfg;
  EXPECT_EQ(cfg.base_lr, 0.0005);
  EXPECT_EQ(cfg.adam_beta2, 0.99);
  EXPECT_EQ(cfg.weight_decay, 0.1);
  EXPECT_EQ(cfg.warmup_steps, 200u);
  TrainConfig c;
  c.SetVariant(Variant::kCyclip);
  EXPECT_EQ(c.weights, (LossWeights{0.25, 0.25}));
  c.batch_size = 1;
  ExpectError(ErrorCode::kBadConfig, [&] { c.Validate(); });
}

TEST(TrainConfigTest, LrAtUsesWarmup) {
  TrainConfig cfg;
  cfg.warmup_steps = 10;
  EXPECT_EQ(LrAt(10, 110, cfg), cfg.base_lr);
  EXPECT_NEAR(LrAt(60, 110, cfg), cfg.base_lr / 2, 1e-18);
  EXPECT_EQ(BatchesPerEpoch(2000, 64), 31u);
  EXPECT_EQ(BatchesPerEpoch(64, 64), 1u);
}

TEST(ComputeGradientsTest, MatchesFiniteDifferencesThroughEncoders) {
  const SyntheticDataset ds = TinyDataset();
  CyclipModel model = CyclipModel::Init(6, 5, 7, 3, 5);
  model.logit_scale.value = 1.7;
  Matrix img(6, 6);
  Matrix txt(6, 5);
  for (std::size_t r = 0; r < 6; ++r) {
    img.SetRow(r, ds.train.image_features.row(r));
    txt.SetRow(r, ds.train.text_features.row(r));
  }
  const LossWeights w{0.25, 0.25};
  const ModelGradients g = ComputeGradients(model, img, txt, w);

  CyclipModel probe = model;
  const auto image_loss = [&](std::span<const double> p) {
    probe.image_encoder.SetFlatParameters(p);
    return ComputeGradients(probe, img, txt, w).loss.total;
  };
  EXPECT_LE(RelativeError(FlattenGradients(g.image),
                          FiniteDiffGrad(image_loss, model.image_encoder.FlatParameters(), 1e-6)),
            1e-5);
  probe = model;
  const auto text_loss = [&](std::span<const double> p) {
    probe.text_encoder.SetFlatParameters(p);
    return ComputeGradients(probe, img, txt, w).loss.total;
  };
  EXPECT_LE(RelativeError(FlattenGradients(g.text),
                          FiniteDiffGrad(text_loss, model.text_encoder.FlatParameters(), 1e-6)),
            1e-5);
  probe = model;
  const auto scale_loss = [&](std::span<const double> p) {
    probe.logit_scale.value = p[0];
    return ComputeGradients(probe, img, txt, w).loss.total;
  };
  const double s[] = {1.7};
  const double analytic[] = {g.loss.grad_logit_scale};
  EXPECT_LE(RelativeError(analytic, FiniteDiffGrad(scale_loss, s, 1e-6)), 1e-5);
}

TEST(TrainTest, ZeroEpochsReturnsInit) {
  const SyntheticDataset ds = TinyDataset();
  TrainConfig cfg = TinyConfig(Variant::kCyclip);
  cfg.epochs = 0;
  const TrainResult r = Train(ds, cfg);
  EXPECT_TRUE(r.log.empty());
  CyclipModel init = CyclipModel::Init(6, 5, cfg.hidden_dim, cfg.embed_dim, cfg.seed);
  init.logit_scale.value = cfg.init_logit_scale;
  EXPECT_EQ(r.model, init);
}

TEST(TrainTest, StepZeroClipLossIndependentOfWeights) {
  const SyntheticDataset ds = TinyDataset();
  const TrainResult clip = Train(ds, TinyConfig(Variant::kClip));
  const TrainResult cyclip = Train(ds, TinyConfig(Variant::kCyclip));
  ASSERT_FALSE(clip.log.empty());
  EXPECT_EQ(clip.log[0].clip_loss, cyclip.log[0].clip_loss);
  EXPECT_NE(clip.log[0].total, cyclip.log[0].total);
}

TEST(TrainTest, LogInvariantsAndDeterminism) {
  const SyntheticDataset ds = TinyDataset();
  for (Variant v : {Variant::kClip, Variant::kCyclip, Variant::kICyclip, Variant::kCCyclip}) {
    TrainConfig cfg = TinyConfig(v);
    cfg.init_logit_scale = 4.5;
    cfg.base_lr = 0.2;
    const TrainResult r = Train(ds, cfg);
    ASSERT_EQ(r.log.size(), cfg.epochs * BatchesPerEpoch(40, 8));
    const std::uint64_t total = r.log.size();
    for (std::size_t i = 0; i < r.log.size(); ++i) {
      const TrainLogEntry& e = r.log[i];
      EXPECT_EQ(e.step, i);
      EXPECT_EQ(e.epoch, i / BatchesPerEpoch(40, 8));
      EXPECT_EQ(e.lr, LrAt(i, total, cfg));
      EXPECT_NEAR(e.total,
                  e.clip_loss + cfg.weights.lambda1 * e.in_modal_loss +
                      cfg.weights.lambda2 * e.cross_modal_loss,
                  1e-12);
      EXPECT_GE(e.logit_scale, LogitScale::kMin);
      EXPECT_LE(e.logit_scale, LogitScale::kMax);
    }
    EXPECT_GE(r.model.logit_scale.value, LogitScale::kMin);
    EXPECT_LE(r.model.logit_scale.value, LogitScale::kMax);
    const TrainResult again = Train(ds, cfg);
    EXPECT_EQ(r.model, again.model);
  }
}

TEST(TrainTest, SeedChangesRun) {
  const SyntheticDataset ds = TinyDataset();
  TrainConfig cfg = TinyConfig(Variant::kCyclip);
  const TrainResult a = Train(ds, cfg);
  cfg.seed = 1;
  EXPECT_NE(a.model, Train(ds, cfg).model);
}

TEST(TrainTest, Errors) {
  SyntheticDataset ds = TinyDataset();
  TrainConfig cfg = TinyConfig(Variant::kClip);
  cfg.batch_size = 41;
  ExpectError(ErrorCode::kBadConfig, [&] { Train(ds, cfg); });
  cfg = TinyConfig(Variant::kClip);
  ds.train.image_features(9, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    Train(ds.train, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFiniteLoss) << e.what();
    EXPECT_NE(std::string(e.what()).find("at step "), std::string::npos);
  }
}

}  // namespace
}  // namespace cyclip
