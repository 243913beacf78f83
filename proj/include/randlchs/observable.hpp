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

#include "randlchs/pauli.hpp"
#include "randlchs/quadrature.hpp"
#include "randlchs/randomized_lcu.hpp"
#include "randlchs/rng.hpp"
#include "randlchs/types.hpp"

namespace randlchs {

/// Pair-sampling weights of the double sum <O> = sum_{l,j} conj(c_l) c_j
/// m_{l,j}: WR = sum |Re(conj(c_l) c_j)|, WI likewise. Up to the pair cap the
/// full cumulative tables are kept; above it sampling falls back to the
/// factorized proposal (l, j independently proportional to |c|) with
/// accept-reject on |part| / (|c_l| |c_j|), and the W constants are computed
/// by a streaming pass.
struct PairWeights {
  double wr = 0.0;
  double wi = 0.0;
  bool factorized = false;
  std::vector<double> cdf_re;      ///< cumulative |Re(conj(c_l) c_j)| over l*M + j
  std::vector<double> cdf_im;
  std::vector<double> node_cdf;    ///< cumulative |c_j|, for the factorized proposal
};

PairWeights pair_weights(const QuadratureGrid& grid, std::size_t pair_cap = 1000000);

/// One draw of Algorithm 1: indices (l, j), the part being estimated, and the
/// sign of that part of conj(c_l) c_j.
struct PairSample {
  int l = 0;
  int j = 0;
  bool imag_part = false;
  int sign = 1;
};

PairSample sample_pair(const PairWeights& pw, const QuadratureGrid& grid, bool imag_part,
                       Rng& rng);

/// m_hat realization for a pair: dense reference, independent trajectory
/// pair, or a single bounded pseudo-measurement.
enum class MMode { exact, cqdrift_mean, shot };

/// Lazy per-node cache of U(T, 0, k_j) u0 and O U(T, 0, k_j) u0 plus the
/// m_{l,j} estimators; thread-safe.
class MEstimator {
 public:
  MEstimator(const LcuWorkspace& ws, const PauliSum& obs, const CVector& u0, double tol = 1e-10);

  /// <u0| U_l^dagger O U_j |u0> from the dense node propagators.
  Complex exact_m(int l, int j);

  /// <phi_l| O |phi_j> over an independent c-qDrift trajectory pair; bias
  /// O(lambda^2 / r) relative to exact_m.
  Complex trajectory_m(int l, int j, long r, Rng& rng);

  /// Bernoulli +/-||O|| outcomes x, y with means Re m, Im m (Hadamard-test
  /// emulation), packed as x + i y. The inner m comes from exact_m when
  /// r <= 0 and from a trajectory pair otherwise.
  Complex shot_m(int l, int j, long r, Rng& rng);

  double norm_o() const { return norm_o_; }
  const LcuWorkspace& workspace() const { return *ws_; }

 private:
  const CVector& node_state(int j);

  const LcuWorkspace* ws_;
  PauliSum obs_;
  CVector u0_;
  NodePropagators props_;
  double norm_o_ = 0.0;
  std::vector<CVector> states_;
  std::vector<char> built_;
  std::mutex mutex_;
};

/// Dispatch on mode; rng drives trajectories and pseudo-measurements.
Complex estimate_m(MEstimator& est, int l, int j, MMode mode, long r, Rng& rng);

struct Algorithm1Result {
  Complex estimate;        ///< X_bar^{(R)} + i X_bar^{(I)}
  double stderr_re = 0.0;  ///< standard error of the Re-part mean
  double stderr_im = 0.0;
  double wr = 0.0;
  double wi = 0.0;
  double shift_scale = 1.0;  ///< e^{2 sigma T}; estimate * shift_scale undoes the stabilization
  long samples = 0;          ///< per part
};

/// S signed samples X = W_part sgn(part(conj(c_l) c_j)) m_hat per part;
/// estimates <w(T)| O |w(T)> of the shift-stabilized solution.
Algorithm1Result run_algorithm1(const LcuWorkspace& ws, const PauliSum& obs, const CVector& u0,
                                long S, MMode mode, long r, std::uint64_t seed,
                                const PairWeights* pw = nullptr, int threads = 1);

/// Same estimator over a prebuilt node cache and weight tables; repeated runs
/// share the dense propagator work.
Algorithm1Result run_algorithm1(MEstimator& est, const PairWeights& pw, long S, MMode mode,
                                long r, std::uint64_t seed, int threads = 1);

/// Deterministic value of the double sum, collapsed algebraically to
/// <v| O |v> with v = sum_j c_j U_j u0.
double exhaustive_observable(const LcuWorkspace& ws, const PauliSum& obs, const CVector& u0,
                             double tol = 1e-10);

/// Literal stratified enumeration of all M^2 pairs in exact mode; agrees with
/// exhaustive_observable to rounding.
Complex exhaustive_pair_sum(MEstimator& est, const PairWeights& pw);

/// ceil((2 W ||O||)^2 log(2/delta) / (2 eps^2)), floored at one sample.
long required_samples(double w, double norm_o, double eps, double delta);

}  // namespace randlchs
