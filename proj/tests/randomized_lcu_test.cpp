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

#include "randlchs/dense.hpp"
#include "randlchs/generator.hpp"
#include "randlchs/models.hpp"
#include "randlchs/randomized_lcu.hpp"
#include "randlchs/rng.hpp"

using namespace randlchs;

namespace {

std::vector<double> abs_cdf(const std::vector<Complex>& weights) {
  std::vector<double> cdf(weights.size());
  double run = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    run += std::abs(weights[j]);
    cdf[j] = run;
  }
  return cdf;
}

/// Workspace over a hand-built grid; the generator must have a PSD decay part.
LcuWorkspace manual_workspace(const LchsProblem& p, const QuadratureGrid& grid) {
  LcuWorkspace ws;
  ws.problem = p;
  ws.shifted = p.a;
  ws.sigma = 0.0;
  ws.norm_l = spectral_norm(assemble_dense(split_hermitian(p.a).first));
  ws.grid = grid;
  ws.node_cdf = abs_cdf(grid.weights);
  return ws;
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(xs[i]), y = std::log(ys[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// u' = -u + 1 on the first component, embedded via (I + Z)/2.
LchsProblem scalar_relaxation(double T) {
  PauliSum a(1, {{Complex(0.5, 0.0), PauliString("I")}, {Complex(0.5, 0.0), PauliString("Z")}});
  Source b = [](double) {
    CVector v = CVector::Zero(2);
    v(0) = Complex(1.0, 0.0);
    return v;
  };
  return LchsProblem{1, a, {}, b, T};
}

}  // namespace

TEST_CASE("workspace stabilization shift") {
  const PauliSum a = build_tfim({2, 1.0, 0.5, 0.3});
  const LchsProblem p{2, a, {}, {}, 1.0};
  const LcuWorkspace ws = prepare_workspace(p, KernelParams{0.8}, 1e-2);

  const CMatrix l = assemble_dense(split_hermitian(a).first);
  const double lambda_min = min_eigenvalue_hermitian(l);
  REQUIRE(lambda_min < 0.0);
  CHECK(ws.sigma == doctest::Approx(-lambda_min).epsilon(1e-12));

  const CMatrix shifted = assemble_dense(ws.shifted);
  const CMatrix expect = assemble_dense(a) + ws.sigma * CMatrix::Identity(4, 4);
  CHECK(spectral_norm(CMatrix(shifted - expect)) <= 1e-12);

  const CMatrix l_psd = l + ws.sigma * CMatrix::Identity(4, 4);
  CHECK(min_eigenvalue_hermitian(l_psd) >= -1e-12);
  CHECK(ws.norm_l == doctest::Approx(spectral_norm(l_psd)).epsilon(1e-12));
  CHECK(ws.times.nodes.empty());
}

TEST_CASE("outer sampling distribution") {
  SUBCASE("degenerate grid always returns node zero") {
    const LchsProblem p{1, PauliSum(1, {{Complex(0.0, 0.8), PauliString("Z")}}), {}, {}, 1.0};
    const LcuWorkspace ws = prepare_workspace(p, KernelParams{0.8}, 1e-2);
    REQUIRE(ws.grid.size() == 1);
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
      const OuterSample s = sample_outer(ws, rng);
      CHECK(s.j == 0);
      CHECK(std::abs(s.phase - Complex(1.0, 0.0)) <= 1e-15);
      CHECK(s.jprime == -1);
    }
  }
  SUBCASE("two-node grid frequencies and phases") {
    QuadratureGrid grid;
    grid.beta = 0.8;
    grid.nodes = {-1.0, 1.0};
    grid.weights = {Complex(0.3, 0.0), Complex(0.0, 0.7)};
    Rng rng(5);
    int hits0 = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
      const OuterSample s = sample_outer(grid, rng);
      if (s.j == 0) {
        ++hits0;
        CHECK(std::abs(s.phase - Complex(1.0, 0.0)) <= 1e-15);
      } else {
        CHECK(std::abs(s.phase - Complex(0.0, 1.0)) <= 1e-15);
      }
    }
    const double freq = double(hits0) / n;
    CHECK(std::abs(freq - 0.3) <= 3.0 * std::sqrt(0.3 * 0.7 / n));
  }
  SUBCASE("full grid histogram passes a chi-squared test") {
    const LchsProblem p{2, build_tfim({2, 1.0, 0.5, 0.3}), {}, {}, 1.0};
    const LcuWorkspace ws = prepare_workspace(p, KernelParams{0.8}, 1e-2);
    const std::size_t m = ws.grid.size();
    const int bins = 16;
    const double total = ws.node_cdf.back();
    // Quantile bins over the sampling CDF, so every bin holds real mass.
    std::vector<int> bin_of(m);
    std::vector<double> expected(bins, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      const double below = j == 0 ? 0.0 : ws.node_cdf[j - 1];
      bin_of[j] = std::min(bins - 1, int(below / total * bins));
      expected[std::size_t(bin_of[j])] += std::abs(ws.grid.weights[j]) / total;
    }
    Rng rng(7);
    const int n = 20000;
    std::vector<int> counts(bins, 0);
    for (int i = 0; i < n; ++i) {
      counts[std::size_t(bin_of[std::size_t(sample_outer(ws, rng).j)])]++;
    }
    double chi2 = 0.0;
    for (int b = 0; b < bins; ++b) {
      const double e = n * expected[b];
      REQUIRE(e > 5.0);
      chi2 += (counts[b] - e) * (counts[b] - e) / e;
    }
    CHECK(chi2 <= 30.578);  // 1% critical value, 15 degrees of freedom
  }
}

TEST_CASE("homogeneous shots") {
  SUBCASE("zero generator returns the input state") {
    const LchsProblem p{1, PauliSum(1, {}), {}, {}, 1.0};
    const LcuWorkspace ws = prepare_workspace(p, KernelParams{0.8}, 1e-2);
    CVector u0 = CVector::Zero(2);
    u0(0) = Complex(0.6, 0.0);
    u0(1) = Complex(0.8, 0.0);
    Rng rng(1);
    const ShotResult s = homogeneous_shot(ws, u0, 8, rng);
    CHECK((s.state - u0).norm() <= 1e-14);
    CHECK(s.weight == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("hamiltonian-only generator reproduces unitary evolution") {
    const PauliSum a(1, {{Complex(0.0, 0.8), PauliString("X")}});
    const LchsProblem p{1, a, {}, {}, 1.0};
    const LcuWorkspace ws = prepare_workspace(p, KernelParams{0.8}, 1e-2);
    REQUIRE(ws.grid.degenerate);
    CVector u0 = CVector::Zero(2);
    u0(0) = Complex(1.0, 0.0);
    const CVector expect = matrix_exponential(CMatrix(-assemble_dense(a)), 1.0) * u0;
    Rng rng(2);
    const ShotResult exact = homogeneous_shot(ws, u0, 4, rng, InnerMode::exact_u);
    CHECK((exact.state - expect).norm() <= 1e-10);
    const ShotResult sampled = homogeneous_shot(ws, u0, 4, rng, InnerMode::cqdrift);
    CHECK((sampled.state - expect).norm() <= 1e-10);
  }
  SUBCASE("mean of many shots approaches the decay propagator") {
    const LchsProblem p{3, build_tfim({3, 1.0, 0.5, 0.3}), {}, {}, 1.0};
    const LcuWorkspace ws = prepare_workspace(p, KernelParams{0.8}, 1e-2);
    CVector u0 = CVector::Ones(8);
    u0 /= u0.norm();
    const CVector oracle = matrix_exponential(CMatrix(-assemble_dense(p.a)), 1.0) * u0;
    const double scale = ws.node_cdf.back();

    auto mean_error = [&](long shots, std::uint64_t salt) {
      Rng rng(salt);
      CVector acc = CVector::Zero(8);
      for (long s = 0; s < shots; ++s) acc += homogeneous_shot(ws, u0, 0, rng, InnerMode::exact_u).state;
      return (scale / double(shots) * acc - oracle).norm() / oracle.norm();
    };
    const double coarse = mean_error(100, 11);
    const double fine = mean_error(4000, 13);
    CHECK(fine <= 0.1);
    CHECK(fine < coarse);
  }
}

TEST_CASE("stratified exhaustion reproduces the deterministic combination") {
  PauliSum a(1, {{Complex(0.45, 0.0), PauliString("I")},
                 {Complex(0.45, 0.0), PauliString("Z")},
                 {Complex(0.0, 0.3), PauliString("Z")}});
  const LchsProblem p{1, a, {}, {}, 1.0};
  const QuadratureGrid grid = build_grid_raw(KernelParams{0.8}, 4.0, 2.0, 2);
  REQUIRE(grid.size() <= 64);
  const LcuWorkspace ws = manual_workspace(p, grid);
  NodePropagators props(ws);

  CVector u0 = CVector::Zero(2);
  u0(0) = Complex(0.8, 0.0);
  u0(1) = Complex(-0.6, 0.0);
  Rng rng(9);

  CVector combo = CVector::Zero(2);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    OuterSample s;
    s.j = int(j);
    s.phase = grid.weights[j] / std::abs(grid.weights[j]);
    const ShotResult shot =
        homogeneous_shot_at(ws, s, u0, 1, rng, InnerMode::exact_u, {}, &props);
    combo += std::abs(grid.weights[j]) * shot.state;
  }
  const CVector direct = lchs_propagator(ws) * u0;
  CHECK((combo - direct).norm() <= 1e-12);
}

TEST_CASE("success probability respects the overlap bound") {
  PauliSum a(1, {{Complex(0.5, 0.0), PauliString("I")},
                 {Complex(0.5, 0.0), PauliString("Z")},
                 {Complex(0.0, 0.3), PauliString("Z")}});
  const LchsProblem p{1, a, {}, {}, 1.0};
  const double eps = 1e-2;
  const LcuWorkspace ws = prepare_workspace(p, KernelParams{0.8}, eps);
  REQUIRE(ws.sigma == 0.0);
  NodePropagators props(ws);

  CVector u0 = CVector::Zero(2);
  u0(0) = Complex(1.0, 0.0);
  Rng rng(4);

  CMatrix rho = CMatrix::Zero(2, 2);
  const double norm_c = ws.node_cdf.back();
  for (std::size_t j = 0; j < ws.grid.size(); ++j) {
    OuterSample s;
    s.j = int(j);
    s.phase = ws.grid.weights[j] / std::abs(ws.grid.weights[j]);
    const CVector phi =
        homogeneous_shot_at(ws, s, u0, 1, rng, InnerMode::exact_u, {}, &props).state;
    rho += std::abs(ws.grid.weights[j]) / norm_c * (phi * phi.adjoint());
  }

  const CVector ut = matrix_exponential(CMatrix(-assemble_dense(a)), 1.0) * u0;
  const CMatrix proj = ut * ut.adjoint() / ut.squaredNorm();
  const double success = (proj * rho).trace().real();
  CHECK(success >= ut.squaredNorm() / (norm_c * norm_c) - eps);
}

TEST_CASE("inhomogeneous shots and the combined estimator") {
  SUBCASE("pure source with zero generator accumulates T times b") {
    CVector v = CVector::Zero(2);
    v(0) = Complex(0.3, 0.0);
    v(1) = Complex(0.4, 0.0);
    const Source b = [v](double) { return v; };
    const LchsProblem p{1, PauliSum(1, {}), {}, b, 2.0};
    const LcuWorkspace ws = prepare_workspace(p, KernelParams{0.8}, 1e-2);
    REQUIRE_FALSE(ws.times.nodes.empty());

    Rng rng(6);
    std::vector<ShotResult> pool;
    for (int s = 0; s < 32; ++s) pool.push_back(inhomogeneous_shot(ws, 1, rng, InnerMode::exact_u));
    const CombinedEstimate est = combine_solution({}, pool, 0.0);
    const CVector duhamel_ref = duhamel_solution(TimeDependentGenerator(PauliSum(1, {}), 2.0), b,
                                                 CVector(CVector::Zero(2)), 2.0, 1e-10);
    CHECK((est.estimate - duhamel_ref).norm() <= 1e-9);
    CHECK((est.estimate - 2.0 * v).norm() <= 1e-9);
  }
  SUBCASE("empty source draws no inhomogeneous shots") {
    const LchsProblem p{1, PauliSum(1, {{Complex(0.5, 0.0), PauliString("I")}}), {}, {}, 1.0};
    SolveOptions opt;
    opt.mode = InnerMode::exact_u;
    opt.hom_shots = 16;
    opt.inhom_shots = 64;
    opt.seed = 5;
    CVector u0 = CVector::Zero(2);
    u0(0) = Complex(1.0, 0.0);
    const SolveResult res = solve(p, u0, opt);
    CHECK(res.inhom_count == 0);
    CHECK(res.hom_count == 16);
  }
  SUBCASE("scalar relaxation reproduces the closed form") {
    const LchsProblem p = scalar_relaxation(1.0);
    CVector u0 = CVector::Zero(2);

    const LcuWorkspace ws = prepare_workspace(p, KernelParams{0.8}, 1e-2);
    const CVector det = exhaustive_solution(ws, u0);
    const double target = 1.0 - std::exp(-1.0);
    CHECK(std::abs(det(0).real() - target) <= 1e-2);
    CHECK(std::abs(det(0).imag()) <= 1e-2);
    CHECK(std::abs(det(1)) <= 1e-10);

    SolveOptions opt;
    opt.mode = InnerMode::exact_u;
    opt.hom_shots = 0;
    opt.inhom_shots = 4000;
    opt.seed = 12;
    const SolveResult res = solve(p, u0, opt);
    CHECK(res.qhat > 0.0);
    const double se = std::max(res.stderr_component(0), 1e-3);
    CHECK(std::abs(res.estimate(0).real() - target) <= 3.0 * se + 1e-2);
  }
}

TEST_CASE("standard error follows the Monte-Carlo rate") {
  const LchsProblem p{2, build_tfim({2, 1.0, 0.5, 0.3}), {}, {}, 1.0};
  CVector u0 = CVector::Ones(4);
  u0 /= u0.norm();

  std::vector<double> shots, sigmas;
  for (long s : {100L, 1000L, 10000L, 100000L}) {
    SolveOptions opt;
    opt.mode = InnerMode::exact_u;
    opt.hom_shots = s;
    opt.inhom_shots = 0;
    opt.seed = 31;
    const SolveResult res = solve(p, u0, opt);
    shots.push_back(double(s));
    sigmas.push_back(res.stderr_component.sum());
  }
  const double slope = loglog_slope(shots, sigmas);
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.1 / 0.5));
}

TEST_CASE("solve is deterministic and thread invariant") {
  const LchsProblem p{2, build_tfim({2, 1.0, 0.5, 0.3}), {}, {}, 1.0};
  CVector u0 = CVector::Zero(4);
  u0(0) = Complex(1.0, 0.0);

  SolveOptions opt;
  opt.mode = InnerMode::cqdrift;
  opt.hom_shots = 64;
  opt.inhom_shots = 0;
  opt.r = 16;
  opt.seed = 77;

  opt.threads = 1;
  const SolveResult one = solve(p, u0, opt);
  opt.threads = 4;
  const SolveResult four = solve(p, u0, opt);
  CHECK((one.estimate - four.estimate).norm() == 0.0);
  CHECK((one.stderr_component - four.stderr_component).norm() == 0.0);
}
