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

#include "randlchs/models.hpp"

#include <string>
#include <utility>

namespace randlchs {

PauliString make_string(int n_qubits, const std::vector<std::pair<int, char>>& placed) {
  if (n_qubits < 1) throw DimensionError("make_string: n_qubits must be positive");
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  for (const auto& [pos, letter] : placed) {
    if (pos < 1 || pos > n_qubits) throw DimensionError("make_string: qubit index out of range");
    s[static_cast<std::size_t>(pos - 1)] = letter;
  }
  return PauliString(s);
}

PauliSum build_tfim(const TfimParams& p) {
  if (p.n < 2) throw DimensionError("build_tfim: need at least two sites");
  std::vector<WeightedPauli> terms;
  for (int i = 1; i < p.n; ++i) {
    terms.push_back({Complex(-p.J, 0.0), make_string(p.n, {{i, 'Z'}, {i + 1, 'Z'}})});
  }
  for (int i = 1; i <= p.n; ++i) {
    terms.push_back({Complex(-p.g, 0.0), make_string(p.n, {{i, 'X'}})});
  }
  for (int i = 1; i <= p.n; ++i) {
    terms.push_back({Complex(0.0, p.gamma), make_string(p.n, {{i, 'Z'}})});
  }
  return PauliSum(p.n, std::move(terms)).simplified();
}

PauliSum jordan_wigner_hop(int j, Complex amp_fwd, Complex amp_bwd, int sites) {
  if (j < 1 || j + 1 > sites) throw DimensionError("jordan_wigner_hop: bond out of range");
  const Complex sym = 0.25 * (amp_fwd + amp_bwd);
  const Complex asym = 0.25 * kI * (amp_fwd - amp_bwd);
  std::vector<WeightedPauli> terms;
  terms.push_back({sym, make_string(sites, {{j, 'X'}, {j + 1, 'X'}})});
  terms.push_back({sym, make_string(sites, {{j, 'Y'}, {j + 1, 'Y'}})});
  terms.push_back({asym, make_string(sites, {{j, 'Y'}, {j + 1, 'X'}})});
  terms.push_back({-asym, make_string(sites, {{j, 'X'}, {j + 1, 'Y'}})});
  return PauliSum(sites, std::move(terms));
}

PauliSum build_hn(const HnParams& p) {
  if (p.sites < 2) throw DimensionError("build_hn: need at least two sites");
  PauliSum sum(p.sites, {});
  for (int j = 1; j < p.sites; ++j) {
    sum = sum.plus(jordan_wigner_hop(j, Complex(p.J + p.gamma, 0.0),
                                     Complex(p.J - p.gamma, 0.0), p.sites));
  }
  if (p.V != 0.0) {
    std::vector<WeightedPauli> inter;
    const double q = 0.25 * p.V;
    for (int j = 1; j < p.sites; ++j) {
      inter.push_back({Complex(q, 0.0), make_string(p.sites, {})});
      inter.push_back({Complex(-q, 0.0), make_string(p.sites, {{j, 'Z'}})});
      inter.push_back({Complex(-q, 0.0), make_string(p.sites, {{j + 1, 'Z'}})});
      inter.push_back({Complex(q, 0.0), make_string(p.sites, {{j, 'Z'}, {j + 1, 'Z'}})});
    }
    sum = sum.plus(PauliSum(p.sites, std::move(inter)));
  }
  return sum.simplified();
}

PauliSum magnetization_op(int n) {
  if (n < 1) throw DimensionError("magnetization_op: n must be positive");
  std::vector<WeightedPauli> terms;
  for (int i = 1; i <= n; ++i) {
    terms.push_back({Complex(1.0 / n, 0.0), make_string(n, {{i, 'Z'}})});
  }
  return PauliSum(n, std::move(terms));
}

PauliSum global_spin_op(int n) {
  if (n < 1) throw DimensionError("global_spin_op: n must be positive");
  return PauliSum(n, {{Complex(1.0, 0.0), PauliString(std::string(static_cast<std::size_t>(n), 'X'))}});
}

PauliSum weighted_number_op(const std::vector<double>& site_weights) {
  const int n = static_cast<int>(site_weights.size());
  if (n < 1) throw DimensionError("weighted_number_op: need at least one site");
  std::vector<WeightedPauli> terms;
  for (int j = 1; j <= n; ++j) {
    const double w = site_weights[static_cast<std::size_t>(j - 1)];
    terms.push_back({Complex(0.5 * w, 0.0), make_string(n, {})});
    terms.push_back({Complex(-0.5 * w, 0.0), make_string(n, {{j, 'Z'}})});
  }
  return PauliSum(n, std::move(terms)).simplified();
}

PauliSum hn_current_op(const HnParams& p) {
  if (p.sites < 2) throw DimensionError("hn_current_op: need at least two sites");
  PauliSum sum(p.sites, {});
  const Complex amp(p.J - p.gamma, 0.0);
  for (int j = 1; j < p.sites; ++j) {
    sum = sum.plus(jordan_wigner_hop(j, kI * amp, -kI * amp, p.sites));
  }
  return sum.simplified();
}

}  // namespace randlchs
