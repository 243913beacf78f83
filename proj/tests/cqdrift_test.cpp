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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "randlchs/cqdrift.hpp"
#include "randlchs/dense.hpp"
#include "randlchs/models.hpp"
#include "randlchs/pauli.hpp"
#include "randlchs/rng.hpp"

using namespace randlchs;

namespace {

double trace_dist(const CMatrix& a, const CMatrix& b) { return trace_distance(a, b); }

CMatrix basis_projector(Eigen::Index dim, Eigen::Index k) {
  CMatrix rho = CMatrix::Zero(dim, dim);
  rho(k, k) = Complex(1.0, 0.0);
  return rho;
}

/// Least-squares slope of log(err) against log(r).
double loglog_slope(const std::vector<double>& rs, const std::vector<double>& errs) {
  const std::size_t n = rs.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(rs[i]), y = std::log(errs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("segment count formula") {
  CHECK(required_segments(1.0, 1.0) == 4);
  CHECK(required_segments(2.0, 0.1) == 160);
  CHECK(required_segments(0.4, 1.0) == 1);
  CHECK(required_segments(0.0, 0.5) == 1);
  CHECK_THROWS_AS(required_segments(1.0, 0.0), DomainError);
}

TEST_CASE("plan construction invariants") {
  const PauliSum a = build_tfim({3, 1.0, 0.5, 0.3});
  const CqdriftPlan plan = node_plan(a, 0.7, 0.0, 2.0, 16);

  SUBCASE("term weights sum to lambda") {
    double total = 0.0;
    for (const auto& t : plan.terms) total += t.weight;
    CHECK(std::abs(total - plan.lambda) <= 1e-10);
  }
  SUBCASE("sampling cdf is normalized and ascending") {
    REQUIRE_FALSE(plan.sampling_cdf.empty());
    CHECK(std::abs(plan.sampling_cdf.back() - 1.0) <= 1e-12);
    for (std::size_t i = 1; i < plan.sampling_cdf.size(); ++i) {
      CHECK(plan.sampling_cdf[i] >= plan.sampling_cdf[i - 1]);
    }
  }
  SUBCASE("node scaling multiplies only the decay-part weights") {
    const double k = 0.7, T = 2.0;
    const double expect = (k * (2.0 * 1.0 + 3.0 * 0.5) + 3.0 * 0.3) * T;
    CHECK(plan.lambda == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("identity strings fold into the global phase") {
    std::vector<TermSpec> specs;
    specs.push_back({PauliString("II"), 0.5, nullptr});
    specs.push_back({PauliString("ZI"), 0.3, nullptr});
    const CqdriftPlan p = build_plan(2, specs, 0.0, 2.0, 4);
    CHECK(p.lambda == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(p.identity_theta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(identity_phase(p) - std::exp(Complex(0.0, -1.0))) <= 1e-12);
    REQUIRE(p.terms.size() == 1);
    CHECK(p.terms[0].string.str() == "ZI");
  }
}

TEST_CASE("step sampling follows the joint density") {
  Rng rng(11);

  SUBCASE("single constant term draws uniform times") {
    std::vector<TermSpec> specs{{PauliString("X"), 0.8, nullptr}};
    const CqdriftPlan plan = build_plan(1, specs, 0.0, 2.0, 4);
    double mean = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      auto [idx, t] = sample_step(plan, rng);
      CHECK(idx == 0);
      CHECK(t >= 0.0);
      CHECK(t <= 2.0);
      mean += t;
    }
    mean /= n;
    const double sigma = 2.0 / std::sqrt(12.0) / std::sqrt(double(n));
    CHECK(std::abs(mean - 1.0) <= 3.0 * sigma);
  }
  SUBCASE("term frequencies match the 3:1 norm ratio") {
    std::vector<TermSpec> specs{{PauliString("X"), 3.0, nullptr}, {PauliString("Z"), -1.0, nullptr}};
    const CqdriftPlan plan = build_plan(1, specs, 0.0, 1.0, 4);
    int first = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) first += (sample_step(plan, rng).first == 0);
    const double freq = double(first) / n;
    const double sigma = std::sqrt(0.75 * 0.25 / n);
    CHECK(std::abs(freq - 0.75) <= 3.0 * sigma);
  }
  SUBCASE("linear schedule has mean 2/3") {
    const Schedule ramp = [](double t) { return t; };
    std::vector<TermSpec> specs{{PauliString("Z"), 1.0, ramp}};
    const CqdriftPlan plan = build_plan(1, specs, 0.0, 1.0, 4);
    double mean = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) mean += sample_step(plan, rng).second;
    mean /= n;
    const double sigma = std::sqrt(1.0 / 18.0) / std::sqrt(double(n));
    CHECK(std::abs(mean - 2.0 / 3.0) <= 3.0 * sigma);
  }
}

TEST_CASE("trajectory execution") {
  SUBCASE("zero generator leaves the state unchanged") {
    const CqdriftPlan plan = build_plan(2, {}, 0.0, 1.0, 8);
    CVector u0 = CVector::Zero(4);
    u0(1) = Complex(0.6, 0.0);
    u0(2) = Complex(0.0, 0.8);
    const Trajectory traj = run_trajectory(plan, u0, std::uint64_t{5});
    CHECK(traj.steps.empty());
    CHECK((traj.final - u0).norm() <= 1e-15);
  }
  SUBCASE("single-term plan is exact for any segment count") {
    std::vector<TermSpec> specs{{PauliString("X"), 0.7, nullptr}};
    const double T = 1.3;
    CVector u0 = CVector::Zero(2);
    u0(0) = Complex(1.0, 0.0);
    const CMatrix gen = Complex(0.0, -1.0) * T * 0.7 * pauli_to_dense(PauliString("X"));
    const CVector expect = matrix_exponential(gen) * u0;
    for (long r : {1L, 7L, 32L}) {
      const CqdriftPlan plan = build_plan(1, specs, 0.0, T, r);
      const Trajectory traj = run_trajectory(plan, u0, std::uint64_t{17});
      CHECK(long(traj.steps.size()) == r);
      CHECK((traj.final - expect).norm() <= 1e-12);
    }
  }
  SUBCASE("steps are unitary and norms are preserved") {
    const CqdriftPlan plan = node_plan(build_tfim({3, 1.0, 0.5, 0.3}), 1.4, 0.0, 1.0, 64);
    CVector u0 = CVector::Ones(8);
    u0 /= u0.norm();
    const Trajectory traj = run_trajectory(plan, u0, std::uint64_t{23});
    CHECK(std::abs(traj.final.norm() - 1.0) <= 1e-12);
    for (const auto& s : traj.steps) {
      CHECK(std::abs(s.angle) == doctest::Approx(plan.lambda / plan.r).epsilon(1e-12));
    }
  }
  SUBCASE("identical seeds reproduce the trajectory bit for bit") {
    const CqdriftPlan plan = node_plan(build_tfim({3, 1.0, 0.5, 0.3}), 0.9, 0.0, 1.0, 32);
    CVector u0 = CVector::Zero(8);
    u0(0) = Complex(1.0, 0.0);
    const Trajectory a = run_trajectory(plan, u0, std::uint64_t{99});
    const Trajectory b = run_trajectory(plan, u0, std::uint64_t{99});
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
      CHECK(a.steps[i].term == b.steps[i].term);
      CHECK(a.steps[i].time == b.steps[i].time);
      CHECK(a.steps[i].angle == b.steps[i].angle);
    }
    CHECK((a.final - b.final).norm() == 0.0);
  }
}

TEST_CASE("expected applied generator is unbiased") {
  const PauliSum a = build_tfim({2, 1.0, 0.5, 0.3});
  const double k = 1.0, T = 1.0;
  const CqdriftPlan plan = node_plan(a, k, 0.0, T, 1);

  auto [l, h] = split_hermitian(a);
  const CMatrix target = k * assemble_dense(l) + assemble_dense(h);

  Rng rng(7);
  const int n = 50000;
  CMatrix mean = CMatrix::Zero(4, 4);
  for (int i = 0; i < n; ++i) {
    auto [idx, t] = sample_step(plan, rng);
    const double c = term_coefficient(plan, idx, t);
    const double angle = (c >= 0.0 ? 1.0 : -1.0) * plan.lambda / plan.r;
    mean += angle * pauli_to_dense(plan.terms[std::size_t(idx)].string);
  }
  mean /= double(n);
  CHECK(spectral_norm(CMatrix(mean - (T / plan.r) * target)) <= 0.02 * plan.lambda);
}

TEST_CASE("channel averaging") {
  SUBCASE("one trial yields a pure projector") {
    const CqdriftPlan plan = node_plan(build_tfim({2, 1.0, 0.5, 0.0}), 1.0, 0.0, 1.0, 8);
    const CMatrix rho = channel_average(plan, basis_projector(4, 0), 1, 3);
    CHECK(std::abs(rho.trace().real() - 1.0) <= 1e-12);
    CHECK(spectral_norm(CMatrix(rho * rho - rho)) <= 1e-12);
    CHECK(spectral_norm(CMatrix(rho - rho.adjoint())) <= 1e-12);
  }
  SUBCASE("single-term plan matches the exact channel for any r") {
    std::vector<TermSpec> specs{{PauliString("ZZ"), 0.9, nullptr}};
    for (long r : {1L, 16L}) {
      const CqdriftPlan plan = build_plan(2, specs, 0.0, 1.0, r);
      const CMatrix rho0 = basis_projector(4, 2);
      const CMatrix avg = channel_average(plan, rho0, 4, 21);
      CHECK(trace_dist(avg, exact_channel_output(plan, rho0)) <= 1e-10);
    }
  }
  SUBCASE("two-term noncommuting error decays as 1/r") {
    std::vector<TermSpec> specs{{PauliString("X"), 0.6, nullptr}, {PauliString("Z"), 0.8, nullptr}};
    const CMatrix rho0 = basis_projector(2, 0);
    std::vector<double> rs, errs;
    for (long r : {16L, 64L, 256L, 1024L}) {
      const CqdriftPlan plan = build_plan(1, specs, 0.0, 1.0, r);
      const double err =
          trace_dist(exact_channel_output(plan, rho0), ideal_channel_output(plan, rho0));
      CHECK(err <= 4.0 * plan.lambda * plan.lambda / double(r));
      rs.push_back(double(r));
      errs.push_back(err);
    }
    const double slope = loglog_slope(rs, errs);
    CHECK(slope == doctest::Approx(-1.0).epsilon(0.3));
  }
  SUBCASE("empirical average stays within the channel bound") {
    const PauliSum l = build_tfim({2, 1.0, 0.5, 0.0});
    const long r = 64;
    const CqdriftPlan plan = node_plan(l, 1.0, 0.0, 1.0, r);
    const CMatrix rho0 = basis_projector(4, 1);
    const CMatrix avg = channel_average(plan, rho0, 400, 77);
    const double bound = 4.0 * plan.lambda * plan.lambda / double(r);
    CHECK(trace_dist(avg, ideal_channel_output(plan, rho0)) <= bound);
  }
}
