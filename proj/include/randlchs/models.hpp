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

#include <vector>

#include "randlchs/pauli.hpp"
#include "randlchs/types.hpp"

namespace randlchs {

/// Pauli string with the given letters placed at 1-indexed qubits, I elsewhere.
PauliString make_string(int n_qubits, const std::vector<std::pair<int, char>>& placed);

/// Non-Hermitian transverse-field Ising chain (open boundary):
/// A = -J sum Z_i Z_{i+1} - g sum X_i + i gamma sum Z_i.
struct TfimParams {
  int n = 5;
  double J = 1.0;
  double g = 0.5;
  double gamma = 0.3;
};

PauliSum build_tfim(const TfimParams& p);

/// Hatano-Nelson chain with nearest-neighbour interaction:
/// A = sum_j [(J+gamma) c†_{j+1} c_j + (J-gamma) c†_j c_{j+1}] + V sum_j n_j n_{j+1},
/// with n_j = (1 - Z_j)/2 under the Jordan-Wigner convention used here.
struct HnParams {
  int sites = 8;
  double J = 1.0;
  double gamma = 0.3;
  double V = 0.5;
};

PauliSum build_hn(const HnParams& p);

/// Jordan-Wigner image of amp_fwd c†_{j+1} c_j + amp_bwd c†_j c_{j+1} on an
/// L-site register (adjacent bond, so no Z strings survive):
/// ((amp_fwd+amp_bwd)/4)(X_j X_{j+1} + Y_j Y_{j+1})
///   + i((amp_fwd-amp_bwd)/4)(Y_j X_{j+1} - X_j Y_{j+1}).
PauliSum jordan_wigner_hop(int j, Complex amp_fwd, Complex amp_bwd, int sites);

/// (1/n) sum_i Z_i.
PauliSum magnetization_op(int n);

/// prod_i X_i.
PauliSum global_spin_op(int n);

/// sum_j w_j n_j with n_j = (1 - Z_j)/2.
PauliSum weighted_number_op(const std::vector<double>& site_weights);

/// Total bond-current operator sum_j -i A_{j,j+1} (c†_j c_{j+1} - c†_{j+1} c_j)
/// with A_{j,j+1} = J - gamma; matches 2 Im(psi_j* A_{j,j+1} psi_{j+1}) on
/// single-particle states.
PauliSum hn_current_op(const HnParams& p);

}  // namespace randlchs
