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

#include <cstdint>
#include <vector>

#include "randlchs/generator.hpp"
#include "randlchs/pauli.hpp"
#include "randlchs/rng.hpp"
#include "randlchs/types.hpp"

namespace randlchs {

enum class ProtectionMode { none, paired_partner, alternate_reorder };

/// One sampled direction of the generator: coeff * scale(t) * string, with
/// scale == nullptr meaning a constant coefficient.
struct TermSpec {
  PauliString string;
  double coeff = 0.0;
  Schedule scale;
};

struct PlanTerm {
  PauliString string;
  double coeff = 0.0;
  Schedule scale;
  double weight = 0.0;           ///< time-integrated norm of this term over [t0, t1]
  std::vector<double> time_cdf;  ///< inverse-CDF table for the conditional time draw (empty if constant)
};

/// Immutable recipe for one randomized trajectory of exp-like evolution with
/// generator G(t) = sum_i c_i(t) P_i on [t0, t1], split into r segments.
struct CqdriftPlan {
  int n_qubits = 0;
  double t0 = 0.0;
  double t1 = 0.0;
  int r = 1;
  std::vector<PlanTerm> terms;
  std::vector<double> sampling_cdf;  ///< cumulative sampling probabilities over terms
  double lambda = 0.0;               ///< sum of term weights, the 1-norm over time
  double identity_theta = 0.0;       ///< integral of identity-string coefficients over [t0, t1]

  ProtectionMode mode = ProtectionMode::none;
  bool literal_pair_angle = false;      ///< use the unrescaled half-angle tau/(2r) in paired mode
  std::vector<int> partner;             ///< paired-partner involution over term indices
  std::vector<int> partner_sign;        ///< sign picked up by conjugating each term into its partner
  std::vector<int> eta_class;           ///< +1 raising / -1 lowering / 0 neutral, for reordering
  int reorder_block = 16;

  double duration() const { return t1 - t0; }
};

struct TrajectoryStep {
  int term = 0;
  double time = 0.0;
  double angle = 0.0;  ///< signed applied angle in exp(-i * angle * P)
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  CVector final;
};

/// r = ceil(4 lambda^2 / eps), floored at one segment.
long required_segments(double lambda, double eps);

/// Builds a plan from explicit term specs; identity-string terms are folded
/// into the deterministic global phase instead of being sampled.
CqdriftPlan build_plan(int n_qubits, const std::vector<TermSpec>& specs, double t0, double t1,
                       long r);

/// Plan for the node generator k*L + H obtained from A = L + iH, where L and
/// H collect the real and imaginary parts of the Pauli coefficients of a.
CqdriftPlan node_plan(const PauliSum& a, double k, double t0, double t1, long r);

/// Signed coefficient of term i at time t.
double term_coefficient(const CqdriftPlan& plan, int i, double t);

/// Draws (term index, time) from the joint density |c_i(t)| / lambda.
std::pair<int, double> sample_step(const CqdriftPlan& plan, Rng& rng);

/// Applies v <- exp(-i * angle * P) v in place.
void apply_pauli_rotation(const PauliString& p, double angle, CVector& v);

/// Phase exp(-i * identity_theta) contributed by the identity-string terms.
Complex identity_phase(const CqdriftPlan& plan);

/// Runs one trajectory of r segments; every step is unitary, so the norm of
/// u0 is preserved (up to the unit-modulus identity phase).
Trajectory run_trajectory(const CqdriftPlan& plan, const CVector& u0, Rng& rng);
Trajectory run_trajectory(const CqdriftPlan& plan, const CVector& u0, std::uint64_t seed);

/// Optional per-time recording: after each segment whose end time passes one
/// of the (ascending) record times, a scaled snapshot of the state is stored.
/// Snapshots include the pro-rated identity phase.
std::vector<CVector> run_trajectory_recorded(const CqdriftPlan& plan, const CVector& u0,
                                             const std::vector<double>& record_times, Rng& rng);

/// Empirical mean projector over independent trajectories started from the
/// eigen-ensemble of rho0.
CMatrix channel_average(const CqdriftPlan& plan, const CMatrix& rho0, int trials,
                        std::uint64_t seed);

/// Dense generator of a constant-coefficient plan (includes identity terms).
CMatrix plan_dense_generator(const CqdriftPlan& plan);

/// Exact single-segment averaged superoperator sum_i p_i conj(U_i) (x) U_i
/// acting on column-major vec(rho); constant-coefficient plans only.
CMatrix plan_segment_superoperator(const CqdriftPlan& plan);

/// Exact r-segment averaged channel applied to rho0 (no sampling noise).
CMatrix exact_channel_output(const CqdriftPlan& plan, const CMatrix& rho0);

/// Target channel e^{-iG tau} rho0 e^{+iG tau} for constant-coefficient plans.
CMatrix ideal_channel_output(const CqdriftPlan& plan, const CMatrix& rho0);

}  // namespace randlchs
