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

#include <utility>

#include "randlchs/types.hpp"

namespace randlchs {

/// Dense Hermitian split a = l + i h with l = (a + a†)/2 and h = (a − a†)/(2i).
std::pair<CMatrix, CMatrix> split_hermitian(const CMatrix& a);

/// exp(a t) by scaling-and-squaring with diagonal Padé approximants
/// (order-13 ladder). Throws DomainError when ‖a t‖ is too large for a
/// trustworthy double-precision result.
CMatrix matrix_exponential(const CMatrix& a, double t = 1.0);

/// Largest singular value.
double spectral_norm(const CMatrix& a);

/// Sum of singular values (Schatten 1-norm).
double trace_norm(const CMatrix& a);

/// (1/2)‖a − b‖_1 for density operators a, b.
double trace_distance(const CMatrix& a, const CMatrix& b);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue_hermitian(const CMatrix& a);

}  // namespace randlchs
