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

#include "randlchs/cqdrift.hpp"
#include "randlchs/generator.hpp"
#include "randlchs/models.hpp"
#include "randlchs/pauli.hpp"
#include "randlchs/types.hpp"

namespace randlchs {

enum class ParityKind { identity, spin_flip, spatial_reflection };

struct ParitySpec {
  ParityKind kind = ParityKind::identity;
  int n_qubits = 0;
};

/// Dense unitary, Hermitian, involutory realization of the parity operator.
CMatrix parity_dense(const ParitySpec& p);

/// Relative residual of the antiunitary symmetry check,
/// |P conj(A) P^{-1} - A|_F / |A|_F, with conjugation in the computational basis.
double pt_check(const PauliSum& a, const ParitySpec& p);

/// Hermitian operator eta with eta A = e^{i phi} A^dagger eta; pairing holds
/// the unitary used to derive partner terms for the paired sampler.
struct Intertwiner {
  CMatrix eta;
  CMatrix pairing;
  int order = 1;
  double phi = 0.0;
  double kappa = 0.0;
  double jtilde = 0.0;
  CMatrix gauge_s;
};

/// |eta a - e^{i phi} a^dagger eta|_F / (|eta|_F |a|_F).
double intertwining_residual(const CMatrix& eta, const CMatrix& a, double phi = 0.0);

/// eta_k = e^{i (k-1) phi / 2} P a^{k-1} from the tower eta_1 = P,
/// eta_{k+1} = e^{i phi / 2} eta_k a; requires the base relation
/// P a = e^{i phi} a^dagger P to hold within 1e-6 relative residual.
Intertwiner recursive_eta(const CMatrix& a, const ParitySpec& p, double phi, int k);

/// Gauge intertwiner for the Hatano-Nelson chain: kappa = ln((J-g)/(J+g))/2,
/// S = exp(kappa sum_j j n_j), eta = S^dagger S, with the spatial reflection
/// as the associated pairing unitary. Requires |gamma| < |J|.
Intertwiner hn_intertwiner(const HnParams& p);

struct DriftResult {
  double drift = 0.0;
  bool relative = true;  ///< false when <eta>(0) vanished and absolute drift is reported
};

/// Evolves u0 under g with the dense oracle and returns the worst drift of
/// the quadratic form <psi(t)|eta|psi(t)> over >= 65 sample times.
DriftResult conserved_drift(const CMatrix& eta, const TimeDependentGenerator& g,
                            const CVector& u0, double tol = 1e-10);

/// Partner involution induced by conjugation with the pairing unitary:
/// pairing P_j pairing^{-1} = sign_j P_{partner_j}, matched by Frobenius
/// distance over the listed strings. A term whose conjugate matches none of
/// the strings pairs with itself at sign +1, which degenerates to a plain
/// full step at the sampler level.
std::pair<std::vector<int>, std::vector<int>> pairing_involution(
    const std::vector<PauliString>& strings, const CMatrix& pairing);

/// Copy of plan with a precomputed partner involution installed; sampling
/// weights become w_j + w_{partner_j} and the cumulative table is rebuilt.
CqdriftPlan with_pairing(const CqdriftPlan& plan, const std::vector<int>& partner,
                         const std::vector<int>& signs);

/// Returns a copy of plan with the requested protection wired in:
/// paired-partner derives a partner involution by conjugating each term with
/// the pairing unitary and doubles the sampling weights accordingly;
/// alternate-reorder freezes the eta-raising/lowering classification of each
/// term at t = t0 against u0, from the sign of <u0| i(eta b - b eta) |u0>
/// with b the signed sampled direction. mode none returns the plan unchanged.
CqdriftPlan protected_plan(const CqdriftPlan& plan, const Intertwiner& eta, ProtectionMode mode,
                           const CVector& u0);

}  // namespace randlchs
