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

#include "cyclip/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cyclip/error.h"

namespace cyclip {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (!std::isfinite(fill)) {
    throw Error(ErrorCode::kNonFiniteValue, "matrix fill value is not finite");
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kDimMismatch,
                "matrix data length " + std::to_string(data_.size()) +
                    " != " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  if (!AllFinite(data_)) {
    throw Error(ErrorCode::kNonFiniteValue, "matrix data contains NaN/Inf");
  }
}

Matrix Matrix::FromRows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t n = rows.size();
  const std::size_t d = n == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(n * d);
  for (const auto& r : rows) {
    if (r.size() != d) throw Error(ErrorCode::kDimMismatch, "ragged rows");
    data.insert(data.end(), r.begin(), r.end());
  }
  return Matrix(n, d, std::move(data));
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::Transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

void Matrix::SetRow(std::size_t r, std::span<const double> v) {
  if (v.size() != cols_) throw Error(ErrorCode::kDimMismatch, "row length");
  std::copy(v.begin(), v.end(), row(r).begin());
}

Matrix& Matrix::operator+=(const Matrix& other) {
  AddScaled(other, 1.0);
  return *this;
}

Matrix& Matrix::operator*=(double scale) {
  for (double& x : data_) x *= scale;
  return *this;
}

void Matrix::AddScaled(const Matrix& other, double scale) {
  if (other.rows_ != rows_ || other.cols_ != cols_) {
    throw Error(ErrorCode::kDimMismatch, "AddScaled shape");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += scale * other.data_[i];
}

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimMismatch, "dot length");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double Norm(std::span<const double> v) { return std::sqrt(Dot(v, v)); }

bool AllFinite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

Vector L2Normalize(std::span<const double> v) {
  const double n = Norm(v);
  if (!(n > kEpsilonNorm)) {
    throw Error(ErrorCode::kZeroNorm, "vector norm below epsilon");
  }
  Vector out(v.begin(), v.end());
  for (double& x : out) x /= n;
  return out;
}

Matrix NormalizeRows(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) out.SetRow(r, L2Normalize(m.row(r)));
  return out;
}

Matrix SimilarityMatrix(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimMismatch, "similarity_matrix column counts differ");
  }
  return MatMulTransposedB(a, b);
}

double LogSumExp(std::span<const double> row) {
  if (row.empty()) throw Error(ErrorCode::kEmptyRow, "logsumexp of empty row");
  const double m = *std::max_element(row.begin(), row.end());
  double s = 0.0;
  for (double x : row) s += std::exp(x - m);
  return m + std::log(s);
}

Matrix MatMul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::kDimMismatch, "MatMul shapes");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto b_row = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += aik * b_row[j];
    }
  }
  return out;
}

Matrix MatMulTransposedB(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimMismatch, "MatMulTransposedB shapes");
  }
  Matrix out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) out(i, j) = Dot(a.row(i), b.row(j));
  }
  return out;
}

Matrix MatMulTransposedA(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::kDimMismatch, "MatMulTransposedA shapes");
  }
  Matrix out(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    auto b_row = b.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = a(k, i);
      if (aki == 0.0) continue;
      auto out_row = out.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += aki * b_row[j];
    }
  }
  return out;
}

}  // namespace cyclip
