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

#include "cyclip/grad_check.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "cyclip/error.h"

namespace cyclip {

Vector FiniteDiffGrad(const ScalarFn& f, std::span<const double> x, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::kBadConfig, "finite difference step must be > 0");
  Vector probe(x.begin(), x.end());
  Vector grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = probe[i];
    probe[i] = xi + h;
    const double plus = f(probe);
    probe[i] = xi - h;
    const double minus = f(probe);
    probe[i] = xi;
    if (!std::isfinite(plus) || !std::isfinite(minus)) {
      throw Error(ErrorCode::kNonFiniteEvaluation,
                  "non-finite value probing coordinate " + std::to_string(i));
    }
    grad[i] = (plus - minus) / (2.0 * h);
  }
  return grad;
}

double RelativeError(std::span<const double> a, std::span<const double> b, double floor) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimMismatch, "relative error length");
  double diff2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) diff2 += (a[i] - b[i]) * (a[i] - b[i]);
  const double denom = std::max({Norm(a), Norm(b), floor});
  return std::sqrt(diff2) / denom;
}

}  // namespace cyclip
