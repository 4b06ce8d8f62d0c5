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

#include "cyclip/encoder.h"

#include <cmath>
#include <string>

#include "cyclip/error.h"
#include "cyclip/rng.h"

namespace cyclip {
namespace {

// z = h W^T + b
Matrix Affine(const Matrix& h, const DenseLayer& layer) {
  Matrix z = MatMulTransposedB(h, layer.weight);
  for (std::size_t r = 0; r < z.rows(); ++r) {
    auto row = z.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) row[c] += layer.bias[c];
  }
  return z;
}

}  // namespace

MlpEncoder::MlpEncoder(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw Error(ErrorCode::kBadArchitecture, "encoder has no layers");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    if (layer.weight.rows() == 0 || layer.weight.cols() == 0 ||
        layer.bias.size() != layer.weight.rows()) {
      throw Error(ErrorCode::kBadArchitecture, "layer " + std::to_string(l) + " shape");
    }
    if (l > 0 && layers_[l - 1].weight.rows() != layer.weight.cols()) {
      throw Error(ErrorCode::kBadArchitecture,
                  "layer " + std::to_string(l) + " input width does not chain");
    }
  }
}

MlpEncoder MlpEncoder::Init(std::span<const std::size_t> layer_dims, std::uint64_t seed) {
  if (layer_dims.size() < 2) {
    throw Error(ErrorCode::kBadArchitecture, "need at least input and output dims");
  }
  for (std::size_t d : layer_dims) {
    if (d == 0) throw Error(ErrorCode::kBadArchitecture, "zero layer width");
  }
  Rng rng(seed);
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l + 1 < layer_dims.size(); ++l) {
    const std::size_t fan_in = layer_dims[l];
    const std::size_t fan_out = layer_dims[l + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    DenseLayer layer{Matrix(fan_out, fan_in), Vector(fan_out, 0.0)};
    for (double& w : layer.weight.values()) w = rng.Uniform(-limit, limit);
    layers.push_back(std::move(layer));
  }
  return MlpEncoder(std::move(layers));
}

std::vector<std::size_t> MlpEncoder::layer_dims() const {
  std::vector<std::size_t> dims;
  if (layers_.empty()) return dims;
  dims.push_back(layers_.front().weight.cols());
  for (const auto& layer : layers_) dims.push_back(layer.weight.rows());
  return dims;
}

std::size_t MlpEncoder::input_dim() const {
  return layers_.empty() ? 0 : layers_.front().weight.cols();
}

std::size_t MlpEncoder::output_dim() const {
  return layers_.empty() ? 0 : layers_.back().weight.rows();
}

std::size_t MlpEncoder::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += layer.weight.size() + layer.bias.size();
  return n;
}

MlpEncoder::Result MlpEncoder::Encode(const Matrix& inputs) const {
  if (inputs.cols() != input_dim()) {
    throw Error(ErrorCode::kDimMismatch, "encoder input width " +
                                             std::to_string(inputs.cols()) + " != " +
                                             std::to_string(input_dim()));
  }
  ForwardTape tape;
  tape.inputs = inputs;
  const Matrix* h = &tape.inputs;
  for (std::size_t l = 0; l + 1 < layers_.size(); ++l) {
    Matrix z = Affine(*h, layers_[l]);
    for (double& x : z.values()) x = std::tanh(x);
    tape.hidden.push_back(std::move(z));
    h = &tape.hidden.back();
  }
  tape.output = Affine(*h, layers_.back());
  tape.output_norms.resize(tape.output.rows());
  tape.embeddings = Matrix(tape.output.rows(), tape.output.cols());
  for (std::size_t r = 0; r < tape.output.rows(); ++r) {
    const double n = Norm(tape.output.row(r));
    if (!std::isfinite(n)) {
      throw Error(ErrorCode::kNonFiniteValue,
                  "encoder output row " + std::to_string(r) + " is not finite");
    }
    if (!(n > kEpsilonNorm)) {
      throw Error(ErrorCode::kZeroNorm,
                  "encoder output row " + std::to_string(r) + " collapsed to zero");
    }
    tape.output_norms[r] = n;
    auto src = tape.output.row(r);
    auto dst = tape.embeddings.row(r);
    for (std::size_t c = 0; c < src.size(); ++c) dst[c] = src[c] / n;
  }
  EmbeddingBatch batch(tape.embeddings);
  return {std::move(batch), std::move(tape)};
}

ParamGradients MlpEncoder::Backward(const ForwardTape& tape,
                                    const Matrix& grad_embeddings) const {
  const std::size_t n = tape.embeddings.rows();
  if (grad_embeddings.rows() != n || grad_embeddings.cols() != output_dim() ||
      tape.embeddings.cols() != output_dim() || tape.inputs.cols() != input_dim() ||
      tape.hidden.size() + 1 != layers_.size()) {
    throw Error(ErrorCode::kTapeMismatch, "tape or gradient shape does not match encoder");
  }

  // Through the normalization: du = (I - e e^T) de / ||u||.
  Matrix delta(n, output_dim());
  for (std::size_t r = 0; r < n; ++r) {
    auto e = tape.embeddings.row(r);
    auto g = grad_embeddings.row(r);
    const double radial = Dot(e, g);
    auto out = delta.row(r);
    for (std::size_t c = 0; c < out.size(); ++c) {
      out[c] = (g[c] - e[c] * radial) / tape.output_norms[r];
    }
  }

  ParamGradients grads;
  grads.layers.resize(layers_.size());
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const Matrix& layer_input = l == 0 ? tape.inputs : tape.hidden[l - 1];
    auto& g = grads.layers[l];
    g.weight = MatMulTransposedA(delta, layer_input);
    g.bias.assign(delta.cols(), 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      auto row = delta.row(r);
      for (std::size_t c = 0; c < row.size(); ++c) g.bias[c] += row[c];
    }
    if (l == 0) break;
    // Into the previous tanh layer: dz = (delta W) * (1 - h^2).
    Matrix prev = MatMul(delta, layers_[l].weight);
    auto h = layer_input.values();
    auto p = prev.values();
    for (std::size_t i = 0; i < p.size(); ++i) p[i] *= 1.0 - h[i] * h[i];
    delta = std::move(prev);
  }
  return grads;
}

Vector MlpEncoder::FlatParameters() const {
  Vector flat;
  flat.reserve(parameter_count());
  for (const auto& layer : layers_) {
    auto w = layer.weight.values();
    flat.insert(flat.end(), w.begin(), w.end());
    flat.insert(flat.end(), layer.bias.begin(), layer.bias.end());
  }
  return flat;
}

void MlpEncoder::SetFlatParameters(std::span<const double> flat) {
  if (flat.size() != parameter_count()) {
    throw Error(ErrorCode::kShapeMismatch, "flat parameter length");
  }
  std::size_t i = 0;
  for (auto& layer : layers_) {
    for (double& w : layer.weight.values()) w = flat[i++];
    for (double& b : layer.bias) b = flat[i++];
  }
}

Vector FlattenGradients(const ParamGradients& grads) {
  Vector flat;
  for (const auto& layer : grads.layers) {
    auto w = layer.weight.values();
    flat.insert(flat.end(), w.begin(), w.end());
    flat.insert(flat.end(), layer.bias.begin(), layer.bias.end());
  }
  return flat;
}

ParamGradients ZeroGradients(const MlpEncoder& enc) {
  ParamGradients grads;
  for (const auto& layer : enc.layers()) {
    grads.layers.push_back(
        {Matrix(layer.weight.rows(), layer.weight.cols()), Vector(layer.bias.size(), 0.0)});
  }
  return grads;
}

}  // namespace cyclip
