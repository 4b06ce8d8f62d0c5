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

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "cyclip/error.h"
#include "cyclip/grad_check.h"
#include "cyclip/losses.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace cyclip {
namespace {

using testing::RandomMatrix;
using testing::RandomSize;
using testing::RandomUnitBatch;
using testing::ToRows;

EmbeddingBatch WorkedImages() { return EmbeddingBatch(Matrix::FromRows({{1, 0}, {0, 1}})); }
EmbeddingBatch WorkedTexts() {
  return EmbeddingBatch(Matrix::FromRows({{1, 0}, {M_SQRT1_2, M_SQRT1_2}}));
}
LogitScale Scale(double s) { return LogitScale{s}; }

TEST(LogitScaleTest, DefaultsAndClamp) {
  EXPECT_NEAR(LogitScale{}.temperature(), 0.07, 1e-15);
  LogitScale high{9.0};
  high.Clamp();
  EXPECT_EQ(high.value, LogitScale::kMax);
  LogitScale low{-1.0};
  low.Clamp();
  EXPECT_EQ(low.value, 0.0);
  EXPECT_NEAR(LogitScale{LogitScale::kMax}.temperature(), 0.01, 1e-6);
}

TEST(LossWeightsTest, NamedVariants) {
  EXPECT_EQ(LossWeights::For(Variant::kClip), (LossWeights{0.0, 0.0}));
  EXPECT_EQ(LossWeights::For(Variant::kCyclip), (LossWeights{0.25, 0.25}));
  EXPECT_EQ(LossWeights::For(Variant::kICyclip), (LossWeights{0.5, 0.0}));
  EXPECT_EQ(LossWeights::For(Variant::kCCyclip), (LossWeights{0.0, 0.5}));
  for (Variant v : {Variant::kClip, Variant::kCyclip, Variant::kICyclip, Variant::kCCyclip}) {
    EXPECT_EQ(ParseVariant(VariantName(v)), v);
  }
  EXPECT_FALSE(ParseVariant("CLIP").has_value());
}

TEST(ClipLossTest, IdenticalEmbeddingsGiveLogTwo) {
  const EmbeddingBatch same(Matrix::FromRows({{0.6, 0.8}, {0.6, 0.8}}));
  EXPECT_NEAR(ClipLoss(same, same, Scale(0.0)).value, std::log(2.0), 1e-15);
}

TEST(ClipLossTest, WorkedExample) {
  EXPECT_NEAR(ClipLoss(WorkedImages(), WorkedTexts(), Scale(0.0)).value, 0.4911570396112658,
              1e-12);
}

TEST(ClipLossTest, SinglePairIsZero) {
  std::mt19937_64 gen(1);
  for (double s : {0.0, 1.0, 4.6052}) {
    const EmbeddingBatch b = RandomUnitBatch(gen, 1, 5);
    EXPECT_NEAR(ClipLoss(b, RandomUnitBatch(gen, 1, 5), Scale(s)).value, 0.0, 1e-15);
  }
}

TEST(ClipLossTest, Errors) {
  std::mt19937_64 gen(2);
  try {
    ClipLoss(RandomUnitBatch(gen, 2, 3), RandomUnitBatch(gen, 3, 3), Scale(0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBatchMismatch);
  }
  EXPECT_THROW(ClipLoss(RandomUnitBatch(gen, 2, 3), RandomUnitBatch(gen, 2, 4), Scale(0.0)),
               Error);
  try {
    ClipLoss(Matrix(0, 3), Matrix(0, 3), Scale(0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateBatch);
  }
}

TEST(ClipLossTest, LargeScaleStaysFinite) {
  const Matrix far = Matrix::FromRows({{1, 0}, {-1, 0}});
  const LossTerm t = ClipLoss(far, far, Scale(8.0));
  EXPECT_TRUE(std::isfinite(t.value));
  EXPECT_GE(t.value, 0.0);
}

TEST(CyclicLossTest, WorkedExample) {
  EXPECT_NEAR(CrossModalCyclicLoss(WorkedImages(), WorkedTexts()).value, 0.5, 1e-15);
  EXPECT_NEAR(InModalCyclicLoss(WorkedImages(), WorkedTexts()).value, 0.5, 1e-15);
}

TEST(CyclicLossTest, ZeroConditions) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const EmbeddingBatch b = RandomUnitBatch(gen, RandomSize(gen, 1, 8), RandomSize(gen, 2, 6));
    EXPECT_EQ(CrossModalCyclicLoss(b, b).value, 0.0);
    EXPECT_NEAR(InModalCyclicLoss(b, b).value, 0.0, 1e-28);
  }
  const EmbeddingBatch one = RandomUnitBatch(gen, 1, 4);
  EXPECT_EQ(CrossModalCyclicLoss(one, RandomUnitBatch(gen, 1, 4)).value, 0.0);
  // Symmetric cross-similarity: texts are an orthogonal reflection of images.
  const Matrix img = NormalizeRows(RandomMatrix(gen, 4, 3));
  Matrix txt = img;
  for (std::size_t r = 0; r < 4; ++r) txt(r, 0) = -txt(r, 0);
  EXPECT_NEAR(CrossModalCyclicLoss(EmbeddingBatch(img), EmbeddingBatch(txt)).value, 0.0, 1e-28);
}

TEST(CyclipLossTest, WorkedCombination) {
  const LossBreakdown b =
      CyclipLoss(WorkedImages(), WorkedTexts(), Scale(0.0), LossWeights{0.25, 0.25});
  EXPECT_NEAR(b.total, 0.7411570396112658, 1e-12);
  const LossBreakdown clip =
      CyclipLoss(WorkedImages(), WorkedTexts(), Scale(0.0), LossWeights{0.0, 0.0});
  EXPECT_EQ(clip.total, clip.clip_loss);
}

TEST(CyclipLossTest, OracleEquivalence) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = RandomSize(gen, 1, 12);
    const std::size_t d = RandomSize(gen, 1, 16);
    const EmbeddingBatch img = RandomUnitBatch(gen, n, d);
    const EmbeddingBatch txt = RandomUnitBatch(gen, n, d);
    const double s = std::uniform_real_distribution<double>(0.0, 4.6052)(gen);
    const LossWeights w{std::uniform_real_distribution<double>(0.0, 1.0)(gen),
                        std::uniform_real_distribution<double>(0.0, 1.0)(gen)};
    const LossBreakdown b = CyclipLoss(img, txt, Scale(s), w);
    const auto ri = ToRows(img.vectors());
    const auto rt = ToRows(txt.vectors());
    const double clip = testing::oracle::ClipLoss(ri, rt, s);
    const double in = testing::oracle::InModal(ri, rt);
    const double cross = testing::oracle::CrossModal(ri, rt);
    EXPECT_NEAR(b.clip_loss, clip, 1e-10);
    EXPECT_NEAR(b.in_modal_loss, in, 1e-10);
    EXPECT_NEAR(b.cross_modal_loss, cross, 1e-10);
    EXPECT_NEAR(b.total, clip + w.lambda1 * in + w.lambda2 * cross, 1e-10);
    EXPECT_NEAR(b.total, b.clip_loss + w.lambda1 * b.in_modal_loss + w.lambda2 * b.cross_modal_loss,
                1e-12);
  }
}

TEST(CyclipLossTest, NonnegativeSymmetricPermutationInvariant) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = RandomSize(gen, 1, 10);
    const std::size_t d = RandomSize(gen, 1, 8);
    const EmbeddingBatch img = RandomUnitBatch(gen, n, d);
    const EmbeddingBatch txt = RandomUnitBatch(gen, n, d);
    const LossWeights w{0.25, 0.25};
    const LossBreakdown b = CyclipLoss(img, txt, Scale(1.3), w);
    EXPECT_GE(b.clip_loss, 0.0);
    EXPECT_GE(b.in_modal_loss, 0.0);
    EXPECT_GE(b.cross_modal_loss, 0.0);

    EXPECT_NEAR(CrossModalCyclicLoss(txt, img).value, b.cross_modal_loss, 1e-12);
    EXPECT_NEAR(InModalCyclicLoss(txt, img).value, b.in_modal_loss, 1e-12);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    Matrix pi(n, d);
    Matrix pt(n, d);
    for (std::size_t r = 0; r < n; ++r) {
      pi.SetRow(r, img.row(perm[r]));
      pt.SetRow(r, txt.row(perm[r]));
    }
    const LossBreakdown p = CyclipLoss(EmbeddingBatch(pi), EmbeddingBatch(pt), Scale(1.3), w);
    EXPECT_NEAR(p.clip_loss, b.clip_loss, 1e-12);
    EXPECT_NEAR(p.in_modal_loss, b.in_modal_loss, 1e-12);
    EXPECT_NEAR(p.cross_modal_loss, b.cross_modal_loss, 1e-12);
  }
}

// Flat parameter layout: image entries, text entries, then s. The floor
// covers N = 1, where every gradient is identically zero and the central
// difference returns rounding noise near 1e-11.
constexpr double kGradFloor = 1e-6;

using RawLoss = std::function<double(const Matrix&, const Matrix&, double)>;

void ExpectGradientsMatch(const RawLoss& loss, const Matrix& img, const Matrix& txt, double s,
                          const Matrix& grad_img, const Matrix& grad_txt, double grad_s,
                          bool check_s) {
  Vector x(img.values().begin(), img.values().end());
  x.insert(x.end(), txt.values().begin(), txt.values().end());
  x.push_back(s);
  const std::size_t n = img.rows();
  const std::size_t d = img.cols();
  const auto f = [&](std::span<const double> p) {
    Matrix a(n, d, Vector(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(n * d)));
    Matrix b(n, d,
             Vector(p.begin() + static_cast<std::ptrdiff_t>(n * d),
                    p.begin() + static_cast<std::ptrdiff_t>(2 * n * d)));
    return loss(a, b, p.back());
  };
  const Vector numeric = FiniteDiffGrad(f, x, 1e-6);
  const std::span<const double> num(numeric);
  EXPECT_LE(RelativeError(grad_img.values(), num.subspan(0, n * d), kGradFloor), 1e-5);
  EXPECT_LE(RelativeError(grad_txt.values(), num.subspan(n * d, n * d), kGradFloor), 1e-5);
  if (check_s) {
    const double single[] = {grad_s};
    EXPECT_LE(RelativeError(single, num.subspan(2 * n * d, 1), kGradFloor), 1e-5);
  } else {
    EXPECT_EQ(grad_s, 0.0);
    EXPECT_NEAR(num.back(), 0.0, 1e-9);
  }
}

TEST(LossGradientTest, AllComponentsMatchFiniteDifferences) {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = RandomSize(gen, 1, 8);
    const std::size_t d = RandomSize(gen, 1, 16);
    const Matrix img = NormalizeRows(RandomMatrix(gen, n, d));
    const Matrix txt = NormalizeRows(RandomMatrix(gen, n, d));
    const double s = std::uniform_real_distribution<double>(0.0, 4.6052)(gen);
    const LossWeights w{0.25, 0.25};
    SCOPED_TRACE(::testing::Message() << "trial " << trial << " n=" << n << " d=" << d);

    const LossTerm clip = ClipLoss(img, txt, Scale(s));
    ExpectGradientsMatch(
        [](const Matrix& a, const Matrix& b, double v) { return ClipLoss(a, b, Scale(v)).value; },
        img, txt, s, clip.grad_image, clip.grad_text, clip.grad_logit_scale, true);

    const LossTerm cross = CrossModalCyclicLoss(img, txt);
    ExpectGradientsMatch(
        [](const Matrix& a, const Matrix& b, double) { return CrossModalCyclicLoss(a, b).value; },
        img, txt, s, cross.grad_image, cross.grad_text, cross.grad_logit_scale, false);

    const LossTerm in = InModalCyclicLoss(img, txt);
    ExpectGradientsMatch(
        [](const Matrix& a, const Matrix& b, double) { return InModalCyclicLoss(a, b).value; },
        img, txt, s, in.grad_image, in.grad_text, in.grad_logit_scale, false);

    const LossBreakdown total = CyclipLoss(img, txt, Scale(s), w);
    ExpectGradientsMatch(
        [&](const Matrix& a, const Matrix& b, double v) {
          return CyclipLoss(a, b, Scale(v), w).total;
        },
        img, txt, s, total.grad_image_embeddings, total.grad_text_embeddings,
        total.grad_logit_scale, true);
  }
}

TEST(LossGradientTest, CombinedGradientIsLinear) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    const EmbeddingBatch img = RandomUnitBatch(gen, 6, 5);
    const EmbeddingBatch txt = RandomUnitBatch(gen, 6, 5);
    const LossWeights w{0.25, 0.25};
    const LossBreakdown b = CyclipLoss(img, txt, Scale(2.0), w);
    const LossTerm clip = ClipLoss(img, txt, Scale(2.0));
    const LossTerm in = InModalCyclicLoss(img, txt);
    const LossTerm cross = CrossModalCyclicLoss(img, txt);
    for (std::size_t i = 0; i < 30; ++i) {
      EXPECT_NEAR(b.grad_image_embeddings.values()[i],
                  clip.grad_image.values()[i] + 0.25 * in.grad_image.values()[i] +
                      0.25 * cross.grad_image.values()[i],
                  1e-12);
      EXPECT_NEAR(b.grad_text_embeddings.values()[i],
                  clip.grad_text.values()[i] + 0.25 * in.grad_text.values()[i] +
                      0.25 * cross.grad_text.values()[i],
                  1e-12);
    }
    EXPECT_NEAR(b.grad_logit_scale, clip.grad_logit_scale, 1e-12);
  }
}

TEST(LossPropertyTest, TemperatureDoesNotChangeRowArgmax) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 100; ++trial) {
    const EmbeddingBatch img = RandomUnitBatch(gen, 7, 4);
    const EmbeddingBatch txt = RandomUnitBatch(gen, 7, 4);
    const Matrix sim = SimilarityMatrix(img.vectors(), txt.vectors());
    for (double s : {0.0, 1.0, 4.6052}) {
      const double m = LogitScale{s}.multiplier();
      for (std::size_t r = 0; r < 7; ++r) {
        std::size_t plain = 0;
        std::size_t scaled = 0;
        for (std::size_t c = 1; c < 7; ++c) {
          if (sim(r, c) > sim(r, plain)) plain = c;
          if (m * sim(r, c) > m * sim(r, scaled)) scaled = c;
        }
        EXPECT_EQ(plain, scaled);
      }
    }
  }
}

}  // namespace
}  // namespace cyclip
