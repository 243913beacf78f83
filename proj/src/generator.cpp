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

#include "randlchs/generator.hpp"

#include <algorithm>
#include <cmath>

#include "randlchs/dense.hpp"

namespace randlchs {

namespace {

double mat_scale(const CMatrix& m) {
  return std::max(1.0, m.cwiseAbs().colwise().sum().maxCoeff());
}

}  // namespace

TimeDependentGenerator::TimeDependentGenerator(PauliSum base, double horizon)
    : base_(std::move(base)), horizon_(horizon) {
  if (!(horizon_ >= 0.0)) throw DomainError("horizon must be non-negative");
}

TimeDependentGenerator::TimeDependentGenerator(PauliSum base,
                                               std::vector<Schedule> schedules,
                                               double horizon)
    : base_(std::move(base)), schedules_(std::move(schedules)), horizon_(horizon) {
  if (!(horizon_ >= 0.0)) throw DomainError("horizon must be non-negative");
  if (!schedules_.empty() && schedules_.size() != base_.size()) {
    throw DimensionError("one schedule per term required");
  }
}

double TimeDependentGenerator::schedule_value(std::size_t l, double t) const {
  if (schedules_.empty()) return 1.0;
  const double f = schedules_[l](t);
  if (!std::isfinite(f)) throw DomainError("schedule value is not finite");
  return f;
}

PauliSum TimeDependentGenerator::at(double t) const {
  if (schedules_.empty()) return base_;
  std::vector<WeightedPauli> terms = base_.terms();
  for (std::size_t l = 0; l < terms.size(); ++l) terms[l].coeff *= schedule_value(l, t);
  return PauliSum(base_.num_qubits(), std::move(terms));
}

CMatrix TimeDependentGenerator::dense_at(double t) const { return assemble_dense(at(t)); }

CVector TimeDependentGenerator::derivative(double t, const CVector& u,
                                           const Source& b) const {
  CVector du = -apply_pauli_sum(at(t), u);
  if (b) du += b(t);
  return du;
}

namespace {

// One midpoint-exponential step-doubling pass on [a, a+h]; returns the
// Richardson-extrapolated propagator and the step-doubling error estimate.
CMatrix midpoint_pair(const TimeDependentGenerator& g, double a, double h, double& err) {
  const CMatrix u1 = matrix_exponential(g.dense_at(a + 0.5 * h), -h);
  const CMatrix left = matrix_exponential(g.dense_at(a + 0.25 * h), -0.5 * h);
  const CMatrix right = matrix_exponential(g.dense_at(a + 0.75 * h), -0.5 * h);
  const CMatrix u2 = right * left;
  err = (u2 - u1).cwiseAbs().colwise().sum().maxCoeff();
  return (4.0 * u2 - u1) / 3.0;
}

}  // namespace

CMatrix time_ordered_propagator(const TimeDependentGenerator& g, double t0, double t1,
                                double tol) {
  if (!(t1 >= t0)) throw DomainError("t1 must be >= t0");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const Eigen::Index dim = dim_for_qubits(g.num_qubits());
  CMatrix u = CMatrix::Identity(dim, dim);
  if (t1 == t0) return u;
  const double span = t1 - t0;
  double t = t0;
  double h = span;
  int halvings = 0;
  while (t < t1) {
    h = std::min(h, t1 - t);
    double err = 0.0;
    const CMatrix step = midpoint_pair(g, t, h, err);
    const double budget = tol * (h / span) * mat_scale(u);
    if (err > budget && halvings < 48) {
      h *= 0.5;
      ++halvings;
      continue;
    }
    if (halvings >= 48) throw ToleranceError("propagator step size underflow");
    u = step * u;
    t += h;
    if (err < 0.1 * budget) h *= 2.0;
  }
  return u;
}

CVector duhamel_solution(const TimeDependentGenerator& g, const Source& b,
                         const CVector& u0, double T, double tol) {
  const std::vector<double> times = {T};
  return duhamel_trajectory(g, b, u0, times, tol).back();
}

namespace {

// Dormand-Prince 5(4) Butcher tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

std::vector<CVector> duhamel_trajectory(const TimeDependentGenerator& g, const Source& b,
                                        const CVector& u0, const std::vector<double>& times,
                                        double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (u0.size() != dim_for_qubits(g.num_qubits())) throw DimensionError("state size mismatch");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1])) {
      throw DomainError("record times must be ascending and non-negative");
    }
  }
  auto f = [&](double t, const CVector& u) { return g.derivative(t, u, b); };
  std::vector<CVector> out;
  out.reserve(times.size());
  CVector u = u0;
  double t = 0.0;
  CVector k1 = f(t, u);
  const double t_end = times.empty() ? 0.0 : times.back();
  double h = std::max(1e-8, t_end > 0.0 ? t_end / 64.0 : 0.0);
  std::size_t next = 0;
  while (next < times.size() && times[next] <= t) {
    out.push_back(u);
    ++next;
  }
  long steps = 0;
  while (next < times.size()) {
    const double target = times[next];
    h = std::min(h, target - t);
    const CVector k2 = f(t + c2 * h, u + h * (a21 * k1));
    const CVector k3 = f(t + c3 * h, u + h * (a31 * k1 + a32 * k2));
    const CVector k4 = f(t + c4 * h, u + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const CVector k5 = f(t + c5 * h, u + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const CVector k6 =
        f(t + h, u + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const CVector u_new = u + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const CVector k7 = f(t + h, u_new);
    const CVector err_vec =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double scale = tol * std::max(1.0, std::max(u.norm(), u_new.norm()));
    const double err = err_vec.norm() / scale;
    if (err <= 1.0) {
      t += h;
      u = u_new;
      k1 = k7;
      while (next < times.size() && times[next] <= t + 1e-14 * std::max(1.0, t)) {
        out.push_back(u);
        ++next;
      }
    }
    const double factor =
        std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
    h *= factor;
    if (++steps > 2'000'000) throw ToleranceError("integrator step budget exhausted");
  }
  return out;
}

}  // namespace randlchs
