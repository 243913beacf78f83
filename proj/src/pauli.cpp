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

#include "randlchs/pauli.hpp"

#include <algorithm>
#include <unordered_map>

namespace randlchs {

namespace {

bool valid_letter(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

// Column index and amplitude of the single nonzero entry in row `row`.
// Each Pauli string is a signed permutation in the computational basis;
// qubit q occupies bit (n - q) so that qubit 1 is most significant.
void pauli_row_action(const PauliString& p, Eigen::Index row, Eigen::Index& col,
                      Complex& amp) {
  const int n = p.num_qubits();
  col = row;
  amp = Complex{1.0, 0.0};
  for (int q = 1; q <= n; ++q) {
    const int bit = n - q;
    const bool b = (row >> bit) & 1;
    switch (p.letter(q)) {
      case 'I':
        break;
      case 'X':
        col ^= Eigen::Index{1} << bit;
        break;
      case 'Y':
        col ^= Eigen::Index{1} << bit;
        amp *= b ? Complex{0.0, 1.0} : Complex{0.0, -1.0};
        break;
      case 'Z':
        if (b) amp = -amp;
        break;
      default:
        throw DomainError("invalid Pauli letter");
    }
  }
}

}  // namespace

PauliString::PauliString(std::string letters) : letters_(std::move(letters)) {
  for (char c : letters_) {
    if (!valid_letter(c)) throw DomainError("Pauli letters must be one of I, X, Y, Z");
  }
}

bool PauliString::is_identity() const {
  return std::all_of(letters_.begin(), letters_.end(), [](char c) { return c == 'I'; });
}

PauliSum::PauliSum(int n_qubits, std::vector<WeightedPauli> terms)
    : n_qubits_(n_qubits), terms_(std::move(terms)) {
  if (n_qubits < 0) throw DimensionError("negative qubit count");
  for (const auto& t : terms_) {
    if (t.string.num_qubits() != n_qubits_) {
      throw DimensionError("term register size mismatch");
    }
    coeff_l1_ += std::abs(t.coeff);
  }
}

PauliSum PauliSum::simplified(double tol) const {
  std::vector<WeightedPauli> merged;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& t : terms_) {
    auto [it, inserted] = index.try_emplace(t.string.str(), merged.size());
    if (inserted) {
      merged.push_back(t);
    } else {
      merged[it->second].coeff += t.coeff;
    }
  }
  std::vector<WeightedPauli> kept;
  for (auto& t : merged) {
    if (std::abs(t.coeff) > tol) kept.push_back(std::move(t));
  }
  return PauliSum(n_qubits_, std::move(kept));
}

PauliSum PauliSum::adjoint() const {
  std::vector<WeightedPauli> out = terms_;
  for (auto& t : out) t.coeff = std::conj(t.coeff);
  return PauliSum(n_qubits_, std::move(out));
}

PauliSum PauliSum::scaled(Complex factor) const {
  std::vector<WeightedPauli> out = terms_;
  for (auto& t : out) t.coeff *= factor;
  return PauliSum(n_qubits_, std::move(out));
}

PauliSum PauliSum::plus(const PauliSum& other) const {
  if (other.n_qubits_ != n_qubits_) throw DimensionError("register size mismatch");
  std::vector<WeightedPauli> out = terms_;
  out.insert(out.end(), other.terms_.begin(), other.terms_.end());
  return PauliSum(n_qubits_, std::move(out));
}

CMatrix pauli_to_dense(const PauliString& p, int dense_cap) {
  const int n = p.num_qubits();
  if (n > dense_cap) throw DimensionError("dense realization exceeds qubit cap");
  const Eigen::Index dim = dim_for_qubits(n);
  CMatrix m = CMatrix::Zero(dim, dim);
  for (Eigen::Index row = 0; row < dim; ++row) {
    Eigen::Index col = 0;
    Complex amp;
    pauli_row_action(p, row, col, amp);
    m(row, col) = amp;
  }
  return m;
}

CMatrix assemble_dense(const PauliSum& a, int dense_cap) {
  if (a.num_qubits() > dense_cap) throw DimensionError("dense realization exceeds qubit cap");
  const Eigen::Index dim = dim_for_qubits(a.num_qubits());
  CMatrix m = CMatrix::Zero(dim, dim);
  for (const auto& t : a.terms()) {
    for (Eigen::Index row = 0; row < dim; ++row) {
      Eigen::Index col = 0;
      Complex amp;
      pauli_row_action(t.string, row, col, amp);
      m(row, col) += t.coeff * amp;
    }
  }
  return m;
}

CVector apply_pauli(const PauliString& p, const CVector& v) {
  const Eigen::Index dim = v.size();
  if (dim != dim_for_qubits(p.num_qubits())) throw DimensionError("state size mismatch");
  CVector out(dim);
  for (Eigen::Index row = 0; row < dim; ++row) {
    Eigen::Index col = 0;
    Complex amp;
    pauli_row_action(p, row, col, amp);
    out(row) = amp * v(col);
  }
  return out;
}

CVector apply_pauli_sum(const PauliSum& a, const CVector& v) {
  CVector out = CVector::Zero(v.size());
  for (const auto& t : a.terms()) out += t.coeff * apply_pauli(t.string, v);
  return out;
}

std::pair<PauliSum, PauliSum> split_hermitian(const PauliSum& a) {
  std::vector<WeightedPauli> lt, ht;
  for (const auto& t : a.terms()) {
    if (t.coeff.real() != 0.0) lt.push_back({Complex{t.coeff.real(), 0.0}, t.string});
    if (t.coeff.imag() != 0.0) ht.push_back({Complex{t.coeff.imag(), 0.0}, t.string});
  }
  return {PauliSum(a.num_qubits(), std::move(lt)), PauliSum(a.num_qubits(), std::move(ht))};
}

}  // namespace randlchs
