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

#include "randlchs/dense.hpp"
#include "randlchs/generator.hpp"
#include "randlchs/kernel.hpp"
#include "randlchs/models.hpp"
#include "randlchs/quadrature.hpp"

using namespace randlchs;

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

/// Reconstruction error of the grid against the dense decay propagator.
/// The node combination requires a positive semidefinite Hermitian part, so
/// the decay is shifted by sigma and the result unshifted by e^{sigma T}.
double reconstruction_error(const QuadratureGrid& grid, const CMatrix& a, double T) {
  auto [l, h] = split_hermitian(a);
  const double sigma = std::max(0.0, -min_eigenvalue_hermitian(l));
  const CMatrix l_psd = l + sigma * CMatrix::Identity(a.rows(), a.cols());
  CMatrix sum = CMatrix::Zero(a.rows(), a.cols());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const CMatrix gen = Complex(0, -1) * T * (grid.nodes[j] * l_psd + h);
    sum += grid.weights[j] * matrix_exponential(gen);
  }
  sum *= std::exp(sigma * T);
  return spectral_norm(CMatrix(sum - matrix_exponential(CMatrix(-a), T)));
}

/// Spectral norm of the shifted Hermitian part, matching the norm the
/// reconstruction actually exponentiates.
double shifted_norm_l(const CMatrix& a) {
  auto [l, h] = split_hermitian(a);
  const double sigma = std::max(0.0, -min_eigenvalue_hermitian(l));
  return spectral_norm(l) + sigma;
}

}  // namespace

TEST_CASE("kernel weight closed forms and symmetry") {
  for (double beta : {0.3, 0.5, 0.8}) {
    KernelParams p{beta};
    const Complex g0 = kernel_weight(0.0, p);
    const double expect = 1.0 / (normalization_constant(beta) * std::exp(1.0));
    CHECK(std::abs(g0 - expect) <= 1e-14);
  }
  KernelParams half{0.5};
  CHECK(std::abs(kernel_weight(1.7, half) - std::conj(kernel_weight(-1.7, half))) <= 1e-14);
  CHECK(std::abs(kernel_weight(10.0, half)) < std::abs(kernel_weight(1.0, half)));
}

TEST_CASE("normalization constant closed form, limits, and defining integral") {
  CHECK(std::abs(normalization_constant(0.999999) - kTwoPi * std::exp(-2.0)) <= 1e-4);
  CHECK(std::abs(normalization_constant(0.5) - kTwoPi * std::exp(-std::sqrt(2.0))) <= 1e-12);
  CHECK(std::abs(normalization_constant(0.5) - 1.52755) <= 1e-4);
  for (double beta : {0.3, 0.5, 0.7, 0.8}) {
    CAPTURE(beta);
    CHECK(std::abs(normalization_integral(beta) - normalization_constant(beta)) <= 1e-8);
  }
  CHECK_THROWS_AS(normalization_constant(0.0), DomainError);
  CHECK_THROWS_AS(normalization_constant(1.0), DomainError);
}

TEST_CASE("truncation radius satisfies and tracks the tail bound") {
  KernelParams half{0.5};
  const double k1 = choose_truncation(half, 1e-2);
  CHECK(truncation_bound(k1, half) <= 1e-2);
  CHECK(choose_truncation(half, 1e-4) >= k1);

  const double k_small_beta = choose_truncation(KernelParams{0.3}, 1e-3);
  const double k_large_beta = choose_truncation(KernelParams{0.9}, 1e-3);
  CHECK(k_small_beta > k_large_beta);
}

TEST_CASE("grid structure invariants") {
  const QuadratureGrid grid = build_grid(KernelParams{0.8}, 1e-2, 1.0, 1.0);

  SUBCASE("golden parameters at the default inputs") {
    CHECK(grid.K == doctest::Approx(97.017233784872488).epsilon(1e-12));
    CHECK(grid.h1 == doctest::Approx(0.36748952191239581).epsilon(1e-12));
    CHECK(grid.Q == 8);
    CHECK(grid.size() == 4224);
  }
  SUBCASE("panel count is integral and M = 2KQ/h1") {
    const double panels = 2.0 * grid.K / grid.h1;
    CHECK(std::abs(panels - std::round(panels)) <= 1e-9);
    CHECK(static_cast<double>(grid.size()) ==
          doctest::Approx(2.0 * grid.K * grid.Q / grid.h1).epsilon(1e-12));
  }
  SUBCASE("nodes lie in [-K, K] in ascending order") {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      CHECK(std::abs(grid.nodes[j]) <= grid.K + 1e-12);
      if (j > 0) CHECK(grid.nodes[j] > grid.nodes[j - 1]);
    }
  }
  SUBCASE("conjugate-symmetric weights on mirrored nodes") {
    const std::size_t m = grid.size();
    for (std::size_t j = 0; j < m / 2; ++j) {
      CHECK(std::abs(grid.nodes[j] + grid.nodes[m - 1 - j]) <= 1e-9);
      CHECK(std::abs(grid.weights[j] - std::conj(grid.weights[m - 1 - j])) <= 1e-12);
    }
  }
}

TEST_CASE("grid sum rule and coefficient 1-norm bound") {
  for (double beta : {0.3, 0.5, 0.7, 0.9}) {
    for (double eps : {1e-2, 1e-3}) {
      CAPTURE(beta);
      CAPTURE(eps);
      const QuadratureGrid grid = build_grid(KernelParams{beta}, eps, 1.0, 1.0);
      CHECK(std::abs(grid.weight_sum() - 1.0) <= eps);
      CHECK(grid.weight_l1() <= 3.0);
    }
  }
}

TEST_CASE("degenerate normL collapses to the single k = 0 node") {
  const QuadratureGrid grid = build_grid(KernelParams{0.8}, 1e-2, 1.0, 0.0);
  CHECK(grid.degenerate);
  REQUIRE(grid.size() == 1);
  CHECK(grid.nodes[0] == 0.0);
  CHECK(std::abs(grid.weights[0] - 1.0) <= 1e-12);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_grid(KernelParams{0.8}, 1.5, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(build_grid(KernelParams{0.8}, 1e-2, -1.0, 1.0), DomainError);
}

TEST_CASE("deterministic reconstruction of the decay propagator") {
  TfimParams p{3, 1.0, 0.5, 0.3};
  const CMatrix a = assemble_dense(build_tfim(p));
  const QuadratureGrid grid = build_grid(KernelParams{0.8}, 1e-2, 1.0, shifted_norm_l(a));
  CHECK(reconstruction_error(grid, a, 1.0) <= 1e-2);
}

TEST_CASE("refinement in Q is monotone and at least geometric") {
  TfimParams p{2, 1.0, 0.5, 0.3};
  const CMatrix a = assemble_dense(build_tfim(p));
  const double K = build_grid(KernelParams{0.8}, 1e-2, 1.0, shifted_norm_l(a)).K;

  // Panels of width 2 keep the per-panel rule the dominant error source.
  double err2 = 0.0, err4 = 0.0, err8 = 0.0;
  for (int q : {2, 4, 8}) {
    const QuadratureGrid g = build_grid_raw(KernelParams{0.8}, K, 2.0, q);
    const double err = reconstruction_error(g, a, 1.0);
    if (q == 2) err2 = err;
    if (q == 4) err4 = err;
    if (q == 8) err8 = err;
  }
  CHECK(err4 <= err2);
  CHECK(err8 <= err4);
  CHECK(err8 <= err2 / 10.0);
}

TEST_CASE("time grid for the source term") {
  SUBCASE("no source gives an empty grid") {
    const TimeGrid tg = build_time_grid({}, 4, 1e-2, 2.0, 1.0);
    CHECK(tg.nodes.empty());
  }
  SUBCASE("constant source integrates to T times its norm") {
    CVector v(2);
    v << 3.0, 4.0;
    const Source b = [&](double) { return v; };
    const TimeGrid tg = build_time_grid(b, 2, 1e-2, 2.0, 1.0);
    CHECK(std::abs(tg.weight_l1() - 2.0 * 5.0) <= 1e-6);
  }
  SUBCASE("exponentially decaying source matches the closed-form integral") {
    CVector v(2);
    v << 1.0, 0.0;
    const Source b = [&](double t) { return CVector(std::exp(-t) * v); };
    const TimeGrid tg = build_time_grid(b, 2, 1e-3, 1.0, 1.0);
    CHECK(std::abs(tg.weight_l1() - (1.0 - std::exp(-1.0))) <= 1e-6);
  }
}
