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

// Central finite differences: the oracle every analytic gradient in this
// library is checked against.

#ifndef CYCLIP_GRAD_CHECK_H_
#define CYCLIP_GRAD_CHECK_H_

#include <functional>
#include <span>

#include "cyclip/linalg.h"

namespace cyclip {

using ScalarFn = std::function<double(std::span<const double>)>;

// (f(x + h e_i) - f(x - h e_i)) / (2h) for every coordinate i.
// Throws kNonFiniteEvaluation if any probe returns NaN/Inf.
Vector FiniteDiffGrad(const ScalarFn& f, std::span<const double> x, double h);

// ||a - b|| / max(||a||, ||b||, floor). The floor keeps all-zero gradients
// from dividing by zero.
double RelativeError(std::span<const double> a, std::span<const double> b,
                     double floor = 1e-8);

}  // namespace cyclip

#endif  // CYCLIP_GRAD_CHECK_H_
