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

#include "randlchs/kernel.hpp"

#include <cmath>
#include <numbers>

#include "randlchs/quadrature.hpp"

namespace randlchs {

namespace {

void check_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
}

}  // namespace

double normalization_constant(double beta) {
  check_beta(beta);
  return 2.0 * std::numbers::pi * std::exp(-std::pow(2.0, beta));
}

Complex kernel_weight(double k, const KernelParams& p) {
  check_beta(p.beta);
  const Complex one_plus_ik{1.0, k};
  const Complex one_minus_ik{1.0, -k};
  const Complex denom =
      normalization_constant(p.beta) * one_minus_ik * std::exp(std::pow(one_plus_ik, p.beta));
  return 1.0 / denom;
}

double normalization_integral(double beta, double tol) {
  check_beta(beta);
  const double decay = std::cos(beta * std::numbers::pi / 2.0);
  // Integrate until the factor e^{-k^beta cos(beta pi/2)} is negligible.
  const double k_max = std::pow(std::log(1.0 / (tol * 1e-3)) / decay, 1.0 / beta);
  const auto [x, w] = gauss_legendre(48);
  auto integrand = [&](double k) {
    const Complex one_plus_ik{1.0, k};
    const Complex one_minus_ik{1.0, -k};
    return 1.0 / (one_minus_ik * std::exp(std::pow(one_plus_ik, beta)));
  };
  // The integrand is conjugate-symmetric, so integrate [0, k_max] and double
  // the real part. Panels grow geometrically to track the stretched tail.
  double acc = 0.0;
  double lo = 0.0;
  double width = 1.0;
  while (lo < k_max) {
    const double hi = std::min(lo + width, k_max);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double panel = 0.0;
    for (std::size_t q = 0; q < x.size(); ++q) {
      panel += w[q] * integrand(mid + half * x[q]).real();
    }
    acc += half * panel;
    lo = hi;
    width = std::max(1.0, lo);
  }
  return 2.0 * acc;
}

double truncation_bound(double K, const KernelParams& p) {
  check_beta(p.beta);
  if (!(K > 0.0)) throw DomainError("K must be positive");
  const double beta = p.beta;
  const int m = static_cast<int>(std::ceil(1.0 / beta));
  const double decay = std::cos(beta * std::numbers::pi / 2.0);
  double m_factorial = 1.0;
  for (int i = 2; i <= m; ++i) m_factorial *= i;
  const double prefactor = std::pow(2.0, m + 1) * m_factorial /
                           (normalization_constant(beta) * std::pow(decay, m));
  return prefactor * std::exp(-0.5 * std::pow(K, beta) * decay) / K;
}

double choose_truncation(const KernelParams& p, double eps) {
  check_beta(p.beta);
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  double K = 1.0;
  while (truncation_bound(K, p) > eps) {
    K *= 1.1;
    if (K > 1e6) throw ToleranceError("truncation search exceeded K = 1e6");
  }
  return K;
}

}  // namespace randlchs
