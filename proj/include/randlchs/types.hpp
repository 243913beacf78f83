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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace randlchs {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest qubit count for which dense (2^n x 2^n) realizations are built.
inline constexpr int kDenseQubitCap = 14;

/// Raised when operand shapes or qubit counts are incompatible.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when a scalar argument is outside its mathematical domain.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative routine cannot reach its requested tolerance.
struct ToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a documented precondition of an algorithm is violated.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Raised when a file cannot be opened, read, or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Number of qubits for a dense dimension; throws unless dim is a power of two.
inline int qubits_for_dim(Eigen::Index dim) {
  if (dim < 1) throw DimensionError("dimension must be positive");
  int n = 0;
  Eigen::Index d = dim;
  while (d > 1) {
    if (d % 2 != 0) throw DimensionError("dimension is not a power of two");
    d /= 2;
    ++n;
  }
  return n;
}

inline Eigen::Index dim_for_qubits(int n_qubits) {
  if (n_qubits < 0 || n_qubits > 30) throw DimensionError("unsupported qubit count");
  return Eigen::Index{1} << n_qubits;
}

}  // namespace randlchs
