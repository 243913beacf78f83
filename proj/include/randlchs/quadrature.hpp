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

#include <iosfwd>
#include <utility>
#include <vector>

#include "randlchs/generator.hpp"
#include "randlchs/kernel.hpp"
#include "randlchs/types.hpp"

namespace randlchs {

/// Gauss-Legendre nodes in (-1, 1) and weights summing to 2; cached per order.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order);

/// Discretization of \int g(k) U(T,k) dk as sum_j c_j U(T, k_j): composite
/// Gauss-Legendre panels of width h1 over [-K, K], Q nodes per panel.
///
/// Nodes come in +/-k pairs whose weights are complex conjugates by
/// construction. A degenerate build (normL = 0) collapses to the single node
/// k = 0 with weight 1.
struct QuadratureGrid {
  double beta = 0.0;
  double K = 0.0;       ///< truncation radius
  double h1 = 0.0;      ///< panel width (K/h1 integral)
  int Q = 0;            ///< nodes per panel
  bool degenerate = false;
  std::vector<double> nodes;     ///< k_j, ascending
  std::vector<Complex> weights;  ///< c_j

  std::size_t size() const { return nodes.size(); }
  /// Sum of weights; approaches 1 as the grid refines (T = 0 identity).
  Complex weight_sum() const;
  /// Sum of |c_j|.
  double weight_l1() const;
};

/// Contract grid for horizon T and inner-norm bound normL >= ||L||, built so
/// truncation and discretization each contribute at most eps/2.
QuadratureGrid build_grid(const KernelParams& p, double eps, double T, double normL);

/// Grid with explicitly chosen K, target panel width, and panel order.
QuadratureGrid build_grid_raw(const KernelParams& p, double K, double h1_target, int Q);

/// Time-quadrature of the Duhamel source term: nodes s_j' in [0, T] with
/// non-negative weights cprime_j' = (panel weight) * ||b(s_j')||; states are
/// sampled from the normalized source at the nodes.
struct TimeGrid {
  std::vector<double> nodes;    ///< s_j', ascending
  std::vector<double> weights;  ///< cprime_j' >= 0
  std::vector<CVector> states;  ///< normalized b(s_j'); zero vector where b = 0

  std::size_t size() const { return nodes.size(); }
  double weight_l1() const;
};

/// Composite Gauss-Legendre time grid; normA bounds the integrand's
/// s-derivative scale and sets the panel count.
TimeGrid build_time_grid(const Source& b, Eigen::Index dim, double eps, double T,
                         double normA);

/// CSV dump (j, k_j, Re c_j, Im c_j).
void write_grid_csv(const QuadratureGrid& g, std::ostream& os);

}  // namespace randlchs
