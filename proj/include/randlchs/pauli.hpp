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

#include <string>
#include <utility>
#include <vector>

#include "randlchs/types.hpp"

namespace randlchs {

/// Tensor product of single-qubit Paulis, e.g. "XZI".
///
/// Qubit q (1-indexed) carries letter q-1 of the label; in dense realizations
/// qubit 1 is the most significant bit of the basis index.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::string letters);

  int num_qubits() const { return static_cast<int>(letters_.size()); }
  char letter(int qubit) const { return letters_[static_cast<std::size_t>(qubit - 1)]; }
  const std::string& str() const { return letters_; }
  bool is_identity() const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.letters_ == b.letters_;
  }

 private:
  std::string letters_;
};

struct WeightedPauli {
  Complex coeff;
  PauliString string;
};

/// Finite sum of weighted Pauli strings on a fixed register.
///
/// Immutable after construction; the coefficient 1-norm and a spectral-norm
/// upper bound (the 1-norm, since each string has unit spectral norm) are
/// cached for samplers.
class PauliSum {
 public:
  PauliSum() = default;
  PauliSum(int n_qubits, std::vector<WeightedPauli> terms);

  int num_qubits() const { return n_qubits_; }
  const std::vector<WeightedPauli>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// Sum of coefficient magnitudes.
  double coeff_l1() const { return coeff_l1_; }
  /// Upper bound on the spectral norm (>= the true norm).
  double spectral_bound() const { return coeff_l1_; }

  /// Equal strings merged, coefficients below tol dropped; term order follows
  /// first appearance.
  PauliSum simplified(double tol = 1e-14) const;

  PauliSum adjoint() const;
  PauliSum scaled(Complex factor) const;
  PauliSum plus(const PauliSum& other) const;

 private:
  int n_qubits_ = 0;
  std::vector<WeightedPauli> terms_;
  double coeff_l1_ = 0.0;
};

/// Dense 2^n x 2^n realization of a Pauli string (signed permutation matrix).
CMatrix pauli_to_dense(const PauliString& p, int dense_cap = kDenseQubitCap);

/// Dense realization of a Pauli sum.
CMatrix assemble_dense(const PauliSum& a, int dense_cap = kDenseQubitCap);

/// Action of a Pauli string on a state vector, O(2^n).
CVector apply_pauli(const PauliString& p, const CVector& v);

/// Action of a Pauli sum on a state vector.
CVector apply_pauli_sum(const PauliSum& a, const CVector& v);

/// Pauli-level Hermitian split A = L + iH with L, H Hermitian
/// (real/imaginary coefficient parts, since Pauli strings are Hermitian).
std::pair<PauliSum, PauliSum> split_hermitian(const PauliSum& a);

}  // namespace randlchs
