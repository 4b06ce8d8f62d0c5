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

// Tanh MLP encoders mapping raw per-modality features onto the unit
// hypersphere, with a hand-written reverse pass.

#ifndef CYCLIP_ENCODER_H_
#define CYCLIP_ENCODER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cyclip/embedding.h"
#include "cyclip/linalg.h"

namespace cyclip {

struct DenseLayer {
  Matrix weight;  // out x in
  Vector bias;    // out

  bool operator==(const DenseLayer& other) const = default;
};

// Activations retained by Encode for the matching Backward call.
struct ForwardTape {
  Matrix inputs;
  std::vector<Matrix> hidden;  // tanh outputs, one per hidden layer
  Matrix output;               // pre-normalization output u
  Vector output_norms;         // ||u|| per row
  Matrix embeddings;           // u / ||u||
};

// Parameter-shaped gradient buffers. `logit_scale` is only populated when
// the gradient comes from a loss that depends on the temperature.
struct ParamGradients {
  std::vector<DenseLayer> layers;
  double logit_scale = 0.0;
};

class MlpEncoder {
 public:
  MlpEncoder() = default;
  // Throws kBadArchitecture when consecutive layer shapes don't chain.
  explicit MlpEncoder(std::vector<DenseLayer> layers);

  // Glorot-uniform weights, zero biases. Same seed gives bit-identical
  // parameters. Needs at least two dims, all positive.
  static MlpEncoder Init(std::span<const std::size_t> layer_dims, std::uint64_t seed);

  std::vector<std::size_t> layer_dims() const;
  std::size_t input_dim() const;
  std::size_t output_dim() const;
  std::size_t parameter_count() const;

  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& mutable_layers() { return layers_; }

  struct Result {
    EmbeddingBatch embeddings;
    ForwardTape tape;
  };
  // Throws kDimMismatch on input width, kNonFiniteValue on a NaN/Inf output
  // row and kZeroNorm on a collapsed one.
  Result Encode(const Matrix& inputs) const;
  EmbeddingBatch Embed(const Matrix& inputs) const { return Encode(inputs).embeddings; }

  // Gradient of any scalar whose gradient w.r.t. the embeddings is
  // `grad_embeddings`. Throws kTapeMismatch on shape inconsistency.
  ParamGradients Backward(const ForwardTape& tape, const Matrix& grad_embeddings) const;

  // Flat parameter view in layer order (weight row-major, then bias).
  Vector FlatParameters() const;
  void SetFlatParameters(std::span<const double> flat);

  bool operator==(const MlpEncoder& other) const = default;

 private:
  std::vector<DenseLayer> layers_;
};

// Same flattening order as MlpEncoder::FlatParameters.
Vector FlattenGradients(const ParamGradients& grads);

// Zero-filled gradients shaped like `enc`.
ParamGradients ZeroGradients(const MlpEncoder& enc);

}  // namespace cyclip

#endif  // CYCLIP_ENCODER_H_
