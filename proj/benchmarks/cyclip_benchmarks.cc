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

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "benchmark/benchmark.h"
#include "cyclip/encoder.h"
#include "cyclip/losses.h"
#include "cyclip/metrics.h"
#include "cyclip/rng.h"

namespace cyclip {
namespace {

EmbeddingBatch RandomBatch(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(n, d);
  for (double& x : m.values()) x = rng.Normal();
  return EmbeddingBatch::Normalized(m);
}

void BM_CyclipLoss(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const EmbeddingBatch img = RandomBatch(n, 32, 1);
  const EmbeddingBatch txt = RandomBatch(n, 32, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(CyclipLoss(img, txt, LogitScale{}, LossWeights{0.25, 0.25}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_CyclipLoss)->Arg(16)->Arg(64)->Arg(256);

void BM_EncodeBackward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::array<std::size_t, 3> dims{64, 64, 32};
  const MlpEncoder enc = MlpEncoder::Init(dims, 3);
  Rng rng(4);
  Matrix x(n, 64);
  for (double& v : x.values()) v = rng.Normal();
  Matrix upstream(n, 32);
  for (double& v : upstream.values()) v = rng.Normal();
  for (auto _ : state) {
    const auto result = enc.Encode(x);
    benchmark::DoNotOptimize(enc.Backward(result.tape, upstream));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_EncodeBackward)->Arg(64)->Arg(256);

void BM_ConsistencyScore(benchmark::State& state) {
  const auto n_train = static_cast<std::size_t>(state.range(0));
  const EmbeddingBatch classes = RandomBatch(32, 32, 5);
  const EmbeddingBatch test = RandomBatch(200, 32, 6);
  LabeledEmbeddings train{RandomBatch(n_train, 32, 7), std::vector<std::size_t>(n_train)};
  for (std::size_t i = 0; i < n_train; ++i) train.labels[i] = i % 32;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ConsistencyScore(test, train, classes, 5));
  }
}
BENCHMARK(BM_ConsistencyScore)->Arg(500)->Arg(2000);

}  // namespace
}  // namespace cyclip

BENCHMARK_MAIN();
