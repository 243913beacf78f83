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
#include <functional>
#include <mutex>
#include <vector>

#include "randlchs/cqdrift.hpp"
#include "randlchs/generator.hpp"
#include "randlchs/pauli.hpp"
#include "randlchs/quadrature.hpp"
#include "randlchs/rng.hpp"
#include "randlchs/types.hpp"

namespace randlchs {

/// du/dt = -a(t) u + b(t) on [0, T]; schedules, when present, scale the terms
/// of a in order (missing entries mean constant); an empty b is b = 0.
struct LchsProblem {
  int n_qubits = 0;
  PauliSum a;
  std::vector<Schedule> schedules;
  Source b;
  double T = 1.0;
};

/// Inner-unitary realization: dense reference propagators or one c-qDrift
/// trajectory per shot.
enum class InnerMode { exact_u, cqdrift };

/// One outer draw: node j with probability |c_j| / ||c||_1 and its unit phase
/// c_j / |c_j|; jprime >= 0 carries the time-node stage of an inhomogeneous
/// draw.
struct OuterSample {
  int j = 0;
  Complex phase{1.0, 0.0};
  int jprime = -1;
  Complex phase_prime{1.0, 0.0};
};

/// Phase-adjusted (and decay-shift corrected) trajectory output of one shot,
/// with the pool scale factor ||c||_1 (homogeneous) or ||c||_1 ||c'||_1.
struct ShotResult {
  bool inhomogeneous = false;
  int j = -1;
  int jprime = -1;
  CVector state;
  double weight = 0.0;
};

using PlanHook = std::function<CqdriftPlan(const CqdriftPlan&)>;

/// Problem with its grids and stabilization data, prepared once and shared
/// read-only by all shots.
///
/// The kernel identity needs the Hermitian part of the generator positive
/// semi-definite, so the workspace simulates a + sigma with
/// sigma = max(0, -lambda_min(L)) and every shot carries the e^{sigma (T-s)}
/// correction in its state.
struct LcuWorkspace {
  LchsProblem problem;
  PauliSum shifted;     ///< a + sigma I
  double sigma = 0.0;
  double norm_l = 0.0;  ///< spectral norm of L + sigma used for the grid
  QuadratureGrid grid;
  TimeGrid times;                 ///< empty when b = 0
  std::vector<double> node_cdf;   ///< cumulative |c_j|
  std::vector<double> time_cdf;   ///< cumulative c'_j'
};

LcuWorkspace prepare_workspace(const LchsProblem& p, const KernelParams& kernel, double eps);

/// Node draw j ~ |c_j| / ||c||_1 with phase c_j / |c_j| (table built on the
/// fly; prefer the workspace overload in hot loops).
OuterSample sample_outer(const QuadratureGrid& grid, Rng& rng);

/// Cached-table draw; adds the time stage j' ~ c'_{j'} / ||c'||_1 when the
/// workspace carries a source grid.
OuterSample sample_outer(const LcuWorkspace& ws, Rng& rng);

/// Lazy cache of dense inner propagators U(T, s, k_j) for the shifted
/// generator; thread-safe.
class NodePropagators {
 public:
  NodePropagators(const LcuWorkspace& ws, double tol = 1e-10);

  /// U(T, 0, k_j).
  const CMatrix& at(int j);

  /// U(T, s, k_j); not cached (time nodes rarely repeat with node pairs).
  CMatrix from(int j, double s) const;

 private:
  CMatrix propagator(double k, double s) const;

  const LcuWorkspace* ws_;
  double tol_;
  bool constant_;
  CMatrix dense_l_;
  CMatrix dense_h_;
  std::vector<CMatrix> cache_;
  std::vector<char> built_;
  std::mutex mutex_;
};

/// c-qDrift plan for node j over [t0, T], protection hook not yet applied.
CqdriftPlan node_plan_for(const LcuWorkspace& ws, int j, double t0, long r);

/// Shot at a forced outer sample; building block for stratified enumeration.
ShotResult homogeneous_shot_at(const LcuWorkspace& ws, const OuterSample& sample,
                               const CVector& u0_normalized, long r, Rng& rng,
                               InnerMode mode = InnerMode::cqdrift, const PlanHook& hook = {},
                               NodePropagators* exact = nullptr);
ShotResult inhomogeneous_shot_at(const LcuWorkspace& ws, const OuterSample& sample, long r,
                                 Rng& rng, InnerMode mode = InnerMode::cqdrift,
                                 const PlanHook& hook = {}, NodePropagators* exact = nullptr);

/// One homogeneous shot: sample j, evolve u0 along k_j L + H, adjust phase.
ShotResult homogeneous_shot(const LcuWorkspace& ws, const CVector& u0_normalized, long r,
                            Rng& rng, InnerMode mode = InnerMode::cqdrift,
                            const PlanHook& hook = {}, NodePropagators* exact = nullptr);

/// One inhomogeneous shot: sample (j', j), evolve the normalized source
/// b(s_{j'}) over [s_{j'}, T]. A zero source at the sampled node yields a
/// zero-contribution shot rather than a resample.
ShotResult inhomogeneous_shot(const LcuWorkspace& ws, long r, Rng& rng,
                              InnerMode mode = InnerMode::cqdrift, const PlanHook& hook = {},
                              NodePropagators* exact = nullptr);

struct CombinedEstimate {
  CVector estimate;
  RVector stderr_component;  ///< per-component Monte-Carlo standard error
  long hom_count = 0;
  long inhom_count = 0;
};

/// v = ||u0|| mean(weight * hom state) + mean(weight * inhom state); with the
/// constant pool weights this is ||u0|| ||c||_1 mean(hom) +
/// ||c||_1 ||c'||_1 mean(inhom).
CombinedEstimate combine_solution(const std::vector<ShotResult>& hom,
                                  const std::vector<ShotResult>& inhom, double u0_norm);

/// Deterministic e^{sigma T} sum_j c_j U(T, 0, k_j); approximates the
/// time-ordered decay propagator of the original problem.
CMatrix lchs_propagator(const LcuWorkspace& ws, double tol = 1e-10);

/// Deterministic double sum over (j', j); approximates u(T) without sampling
/// noise (quadrature error only).
CVector exhaustive_solution(const LcuWorkspace& ws, const CVector& u0, double tol = 1e-10);

struct SolveOptions {
  double eps = 1e-2;  ///< quadrature accuracy target for the grids
  long hom_shots = 1024;
  long inhom_shots = 1024;
  long r = 256;
  InnerMode mode = InnerMode::cqdrift;
  std::uint64_t seed = 0;
  int threads = 1;
  bool keep_shots = false;
  PlanHook plan_hook;
  KernelParams kernel;
};

struct SolveResult {
  CVector estimate;
  RVector stderr_component;
  double qhat = 0.0;   ///< (||u0||_1 + ||b||_{L1}) / ||estimate||_1
  double sigma = 0.0;
  std::size_t grid_size = 0;
  long hom_count = 0;
  long inhom_count = 0;
  std::vector<ShotResult> shots;  ///< populated when keep_shots is set
};

/// Full Monte-Carlo estimate of u(T). Shot seeds derive from (seed, index),
/// so results are bit-identical for any thread count.
SolveResult solve(const LchsProblem& p, const CVector& u0, const SolveOptions& opt);

}  // namespace randlchs
