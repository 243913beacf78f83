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
#include "randlchs/rng.hpp"
#include "randlchs/types.hpp"

namespace randlchs {

/// One realized Dyson path over a time window: interaction times with the
/// sampled term index at each, the accumulated phase Π (−i sgn α_p(t_k)), and
/// the window mass ∫ Σ_p |α_p(t)| dt. The unbiased path value of
/// 𝒯exp(−i ∫ H) is e^{mass} · phase · σ_{p_ℓ} ··· σ_{p_1}.
struct PoissonPath {
  double mass = 0.0;
  std::vector<double> times;
  std::vector<int> indices;
  Complex phase{1.0, 0.0};
};

/// Total interaction mass ∫_0^T Σ_p |α_p(t)| dt of the Hamiltonian g.
double urcc_mass(const TimeDependentGenerator& g);

/// Segment count r = max(1, ceil(mass^2)) keeping the importance-weight
/// overhead below e.
long urcc_segments(const TimeDependentGenerator& g);

/// Samples interaction times on [t0, t1] by thinning an exponential clock at
/// the scanned max-rate envelope, then draws the term at each accepted time
/// with probability |α_p(t)| / Σ_q |α_q(t)|.
PoissonPath urcc_sample_path(const TimeDependentGenerator& g, double t0, double t1, Rng& rng);

/// Applies the path's Pauli product to u0 in time order; phase and mass
/// weighting are left to the caller.
CVector urcc_apply_path(const TimeDependentGenerator& g, const PoissonPath& path,
                        const CVector& u0);

struct UrccResult {
  double estimate = 0.0;
  double stderr_value = 0.0;
  double overhead = 1.0;         ///< deterministic weight magnitude Π_s C_s
  double sample_variance = 0.0;
  bool variance_warning = false;
  long samples = 0;
};

/// Estimates <u(T)| O |u(T)> for u(T) = 𝒯exp(−i ∫ H) u0 from S independent
/// trajectory pairs over r segments.
///
/// Time-independent H uses the segment-restructured channel: a unit-mass
/// drift branch realizing cos θ − i sin θ σ_p as an exact rotation, and
/// correction branches of mass 1 − cos θ (identity), θ − sin θ (single term),
/// and e^θ − 1 − θ (Poisson tail of ℓ ≥ 2 terms), so the per-segment weight
/// is C_s = e^θ + 1 − cos θ − sin θ with θ the segment mass. Scheduled H
/// falls back to raw thinned paths with per-segment weight e^θ.
UrccResult urcc_estimate(const TimeDependentGenerator& g, const CVector& u0, const PauliSum& obs,
                         long S, long r, std::uint64_t seed,
                         double variance_budget = -1.0);

}  // namespace randlchs
