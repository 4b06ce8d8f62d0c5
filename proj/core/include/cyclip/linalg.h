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

// Dense row-major f64 linear algebra used throughout the library.

#ifndef CYCLIP_LINALG_H_
#define CYCLIP_LINALG_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cyclip {

using Vector = std::vector<double>;

// Vectors with norm at or below this are rejected by L2Normalize.
inline constexpr double kEpsilonNorm = 1e-12;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Takes ownership of row-major `data`; throws kDimMismatch on a length
  // mismatch and kNonFiniteValue on NaN/Inf entries.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix FromRows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  Matrix Transposed() const;
  void SetRow(std::size_t r, std::span<const double> v);

  Matrix& operator+=(const Matrix& other);
  Matrix& operator*=(double scale);
  // this += scale * other
  void AddScaled(const Matrix& other, double scale);

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double Dot(std::span<const double> a, std::span<const double> b);
double Norm(std::span<const double> v);
bool AllFinite(std::span<const double> v);

// Unit-norm copy of v. Throws kZeroNorm when ||v|| <= kEpsilonNorm.
Vector L2Normalize(std::span<const double> v);

// Row-wise L2Normalize.
Matrix NormalizeRows(const Matrix& m);

// S(j, k) = <a_j, b_k>. Throws kDimMismatch when column counts differ.
Matrix SimilarityMatrix(const Matrix& a, const Matrix& b);

// log(sum_i exp(row_i)) via max-shift. Throws kEmptyRow on empty input.
double LogSumExp(std::span<const double> row);

// Plain products. Shapes are checked and violations throw kDimMismatch.
Matrix MatMul(const Matrix& a, const Matrix& b);            // a * b
Matrix MatMulTransposedB(const Matrix& a, const Matrix& b);  // a * b^T
Matrix MatMulTransposedA(const Matrix& a, const Matrix& b);  // a^T * b

}  // namespace cyclip

#endif  // CYCLIP_LINALG_H_
