// Copyright 2026 The randlchs Authors.
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

#pragma once

#include "randlchs/types.hpp"

namespace randlchs {

/// Parameters of the decay kernel family f(z) = 1 / (C_beta e^{(1+iz)^beta}),
/// 0 < beta < 1, principal branch powers.
struct KernelParams {
  double beta = 0.8;
};

/// Normalization constant C_beta = 2 pi e^{-2^beta}.
double normalization_constant(double beta);

/// Kernel weight g(k) = 1 / (C_beta (1 - ik) e^{(1+ik)^beta}).
Complex kernel_weight(double k, const KernelParams& p);

/// Numerical evaluation of the normalization integral
/// \int dk / ((1 - ik) e^{(1+ik)^beta}), which must equal C_beta.
double normalization_integral(double beta, double tol = 1e-10);

/// Tail truncation bound for cutting the weight integral to [-K, K].
double truncation_bound(double K, const KernelParams& p);

/// Smallest K on a geometric search grid with truncation_bound(K) <= eps.
double choose_truncation(const KernelParams& p, double eps);

}  // namespace randlchs
