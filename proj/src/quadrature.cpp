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

#include "randlchs/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>

namespace randlchs {

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order) {
  if (order < 1 || order > 128) throw DomainError("Gauss-Legendre order out of range");
  static std::mutex mutex;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  // Newton iteration on P_n from the Chebyshev-based initial guess.
  std::vector<double> x(order), w(order);
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
  auto [pos, inserted] = cache.emplace(order, std::make_pair(std::move(x), std::move(w)));
  return pos->second;
}

Complex QuadratureGrid::weight_sum() const {
  Complex s{0.0, 0.0};
  for (const Complex& c : weights) s += c;
  return s;
}

double QuadratureGrid::weight_l1() const {
  double s = 0.0;
  for (const Complex& c : weights) s += std::abs(c);
  return s;
}

QuadratureGrid build_grid_raw(const KernelParams& p, double K, double h1_target, int Q) {
  if (!(K > 0.0) || !(h1_target > 0.0) || Q < 1) {
    throw DomainError("grid parameters must be positive");
  }
  const auto n_panels_half = static_cast<long>(std::ceil(K / h1_target - 1e-12));
  const double h1 = K / static_cast<double>(n_panels_half);
  const auto& [x, w] = gauss_legendre(Q);

  QuadratureGrid g;
  g.beta = p.beta;
  g.K = K;
  g.h1 = h1;
  g.Q = Q;
  // Positive half k > 0; the negative half mirrors it with conjugate weights.
  std::vector<double> pos_nodes;
  std::vector<Complex> pos_weights;
  pos_nodes.reserve(static_cast<std::size_t>(n_panels_half) * Q);
  for (long m = 0; m < n_panels_half; ++m) {
    const double lo = m * h1, hi = (m + 1) * h1;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int q = 0; q < Q; ++q) {
      const double k = mid + half * x[static_cast<std::size_t>(q)];
      pos_nodes.push_back(k);
      pos_weights.push_back(half * w[static_cast<std::size_t>(q)] * kernel_weight(k, p));
    }
  }
  const std::size_t n_half = pos_nodes.size();
  g.nodes.resize(2 * n_half);
  g.weights.resize(2 * n_half);
  for (std::size_t i = 0; i < n_half; ++i) {
    g.nodes[n_half + i] = pos_nodes[i];
    g.weights[n_half + i] = pos_weights[i];
    g.nodes[n_half - 1 - i] = -pos_nodes[i];
    g.weights[n_half - 1 - i] = std::conj(pos_weights[i]);
  }
  return g;
}

QuadratureGrid build_grid(const KernelParams& p, double eps, double T, double normL) {
  if (!(eps > 0.0) || eps >= 1.0) throw DomainError("eps must lie in (0, 1)");
  if (!(T > 0.0)) throw DomainError("T must be positive");
  if (normL < 0.0) throw DomainError("normL must be non-negative");
  if (normL == 0.0) {
    QuadratureGrid g;
    g.beta = p.beta;
    g.degenerate = true;
    g.nodes = {0.0};
    g.weights = {Complex{1.0, 0.0}};
    return g;
  }
  // Truncation and discretization each receive half the budget.
  const double eps_half = 0.5 * eps;
  const double K = choose_truncation(p, eps_half);
  const double h1 = 1.0 / (std::numbers::e * T * normL);
  const double c_beta = normalization_constant(p.beta);
  const int Q = static_cast<int>(
      std::ceil(std::log(8.0 * K / (3.0 * c_beta * eps_half)) / std::log(4.0)));
  return build_grid_raw(p, K, h1, std::max(1, Q));
}

double TimeGrid::weight_l1() const {
  double s = 0.0;
  for (double c : weights) s += c;
  return s;
}

TimeGrid build_time_grid(const Source& b, Eigen::Index dim, double eps, double T,
                         double normA) {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (!(T > 0.0)) throw DomainError("T must be positive");
  if (!b) return {};
  const int panels = std::max(4, static_cast<int>(std::ceil(0.5 * T * (1.0 + normA))));
  const int order = 12;
  const auto& [x, w] = gauss_legendre(order);
  TimeGrid grid;
  grid.nodes.reserve(static_cast<std::size_t>(panels) * order);
  const double width = T / panels;
  for (int m = 0; m < panels; ++m) {
    const double mid = (m + 0.5) * width, half = 0.5 * width;
    for (int q = 0; q < order; ++q) {
      const double s = mid + half * x[static_cast<std::size_t>(q)];
      CVector bs = b(s);
      if (bs.size() != dim) throw DimensionError("source dimension mismatch");
      const double norm = bs.norm();
      grid.nodes.push_back(s);
      grid.weights.push_back(half * w[static_cast<std::size_t>(q)] * norm);
      grid.states.push_back(norm > 0.0 ? CVector(bs / norm) : CVector(CVector::Zero(dim)));
    }
  }
  return grid;
}

void write_grid_csv(const QuadratureGrid& g, std::ostream& os) {
  os << "j,k,re_c,im_c\n";
  for (std::size_t j = 0; j < g.size(); ++j) {
    os << j << ',' << g.nodes[j] << ',' << g.weights[j].real() << ','
       << g.weights[j].imag() << '\n';
  }
}

}  // namespace randlchs
