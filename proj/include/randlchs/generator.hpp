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

#include <functional>
#include <vector>

#include "randlchs/pauli.hpp"
#include "randlchs/types.hpp"

namespace randlchs {

/// Real-valued scalar schedule of time.
using Schedule = std::function<double(double)>;

/// Vector-valued source term b(t); an empty function means b ≡ 0.
using Source = std::function<CVector(double)>;

/// Generator A(t) = Σ_l f_l(t) α_l P_l for du/dt = −A(t) u + b(t).
///
/// Each term carries an optional scalar schedule f_l (default f ≡ 1); the
/// object is immutable after construction and safe to share across threads.
class TimeDependentGenerator {
 public:
  explicit TimeDependentGenerator(PauliSum base, double horizon = 1.0);
  TimeDependentGenerator(PauliSum base, std::vector<Schedule> schedules, double horizon);

  int num_qubits() const { return base_.num_qubits(); }
  double horizon() const { return horizon_; }
  const PauliSum& base() const { return base_; }
  bool time_independent() const { return schedules_.empty(); }
  const std::vector<Schedule>& schedules() const { return schedules_; }

  /// Schedule value of term l at time t (1 when no schedule is attached).
  double schedule_value(std::size_t l, double t) const;

  /// Coefficient-scaled Pauli sum at time t.
  PauliSum at(double t) const;

  /// Dense realization at time t.
  CMatrix dense_at(double t) const;

  /// −A(t) u + b(t); the workhorse of the reference integrators.
  CVector derivative(double t, const CVector& u, const Source& b) const;

 private:
  PauliSum base_;
  std::vector<Schedule> schedules_;
  double horizon_;
};

/// Time-ordered propagator for dU/dt = −A(t) U over [t0, t1].
///
/// Adaptive step-doubling on midpoint exponentials with Richardson
/// extrapolation; the accumulated local error is held below tol times the
/// running propagator scale.
CMatrix time_ordered_propagator(const TimeDependentGenerator& g, double t0, double t1,
                                double tol = 1e-10);

/// Reference solution of du/dt = −A(t) u + b(t) on [0, T] by adaptive
/// Dormand–Prince RK5(4).
CVector duhamel_solution(const TimeDependentGenerator& g, const Source& b,
                         const CVector& u0, double T, double tol = 1e-10);

/// Reference solution recorded at the given (ascending, in [0, T]) times.
std::vector<CVector> duhamel_trajectory(const TimeDependentGenerator& g, const Source& b,
                                        const CVector& u0, const std::vector<double>& times,
                                        double tol = 1e-10);

}  // namespace randlchs
