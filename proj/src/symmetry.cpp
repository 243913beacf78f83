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

#include "randlchs/symmetry.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "randlchs/dense.hpp"

namespace randlchs {

namespace {

std::uint64_t reverse_bits(std::uint64_t value, int n_bits) {
  std::uint64_t out = 0;
  for (int i = 0; i < n_bits; ++i) {
    out = (out << 1) | ((value >> i) & 1u);
  }
  return out;
}

double occupation_weight(std::uint64_t basis, int sites) {
  double w = 0.0;
  for (int j = 1; j <= sites; ++j) {
    if ((basis >> (sites - j)) & 1u) w += static_cast<double>(j);
  }
  return w;
}

}  // namespace

CMatrix parity_dense(const ParitySpec& p) {
  const Eigen::Index dim = dim_for_qubits(p.n_qubits);
  switch (p.kind) {
    case ParityKind::identity:
      return CMatrix::Identity(dim, dim);
    case ParityKind::spin_flip:
      return pauli_to_dense(PauliString(std::string(static_cast<std::size_t>(p.n_qubits), 'X')));
    case ParityKind::spatial_reflection: {
      CMatrix r = CMatrix::Zero(dim, dim);
      for (Eigen::Index col = 0; col < dim; ++col) {
        const auto row = static_cast<Eigen::Index>(
            reverse_bits(static_cast<std::uint64_t>(col), p.n_qubits));
        r(row, col) = Complex{1.0, 0.0};
      }
      return r;
    }
  }
  throw DomainError("unknown parity kind");
}

double pt_check(const PauliSum& a, const ParitySpec& p) {
  if (a.num_qubits() != p.n_qubits) throw DimensionError("parity and operator qubit counts differ");
  const CMatrix dense = assemble_dense(a);
  const CMatrix par = parity_dense(p);
  const double scale = dense.norm();
  if (scale == 0.0) return 0.0;
  return (par * dense.conjugate() * par - dense).norm() / scale;
}

double intertwining_residual(const CMatrix& eta, const CMatrix& a, double phi) {
  if (eta.rows() != a.rows() || eta.cols() != a.cols() || a.rows() != a.cols()) {
    throw DimensionError("intertwining residual needs square operands of equal size");
  }
  const double scale = eta.norm() * a.norm();
  if (scale == 0.0) return 0.0;
  const Complex phase = std::exp(kI * phi);
  return (eta * a - phase * a.adjoint() * eta).norm() / scale;
}

Intertwiner recursive_eta(const CMatrix& a, const ParitySpec& p, double phi, int k) {
  if (k < 1) throw DomainError("tower order must be at least 1");
  if (a.rows() != a.cols()) throw DimensionError("operator must be square");
  const CMatrix par = parity_dense(p);
  if (par.rows() != a.rows()) throw DimensionError("parity and operator dimensions differ");

  const double base = intertwining_residual(par, a, phi);
  if (base > 1e-6) {
    throw ContractError("base relation P A = e^{i phi} A^dagger P fails, residual " +
                        std::to_string(base));
  }

  const Complex half_phase = std::exp(kI * (phi / 2.0));
  CMatrix eta = par;
  for (int step = 2; step <= k; ++step) eta = half_phase * (eta * a).eval();

  const double norm_a = spectral_norm(a);
  const double residual = (eta * a - std::exp(kI * phi) * a.adjoint() * eta).norm();
  if (residual > 1e-8 * std::pow(norm_a, k) + 1e-300) {
    throw ToleranceError("tower operator lost the intertwining relation, residual " +
                         std::to_string(residual));
  }

  Intertwiner out;
  out.eta = std::move(eta);
  out.pairing = par;
  out.order = k;
  out.phi = phi;
  return out;
}

Intertwiner hn_intertwiner(const HnParams& p) {
  if (!(std::abs(p.gamma) < std::abs(p.J))) {
    throw DomainError("gauge transformation needs |gamma| < |J|");
  }
  const double kappa = 0.5 * std::log((p.J - p.gamma) / (p.J + p.gamma));
  const Eigen::Index dim = dim_for_qubits(p.sites);

  CMatrix eta = CMatrix::Zero(dim, dim);
  CMatrix s = CMatrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const double w = occupation_weight(static_cast<std::uint64_t>(b), p.sites);
    eta(b, b) = std::exp(2.0 * kappa * w);
    s(b, b) = std::exp(kappa * w);
  }

  const CMatrix a = assemble_dense(build_hn(p));
  const CMatrix gauged = s * a * s.inverse();
  const double hermit = (gauged - gauged.adjoint()).norm() / gauged.norm();
  if (hermit > 1e-10) {
    throw ToleranceError("gauged chain is not Hermitian, residual " + std::to_string(hermit));
  }
  const double relation = intertwining_residual(eta, a, 0.0);
  if (relation > 1e-10) {
    throw ToleranceError("eta does not intertwine the chain, residual " + std::to_string(relation));
  }

  Intertwiner out;
  out.eta = std::move(eta);
  out.pairing = parity_dense({ParityKind::spatial_reflection, p.sites});
  out.order = 1;
  out.phi = 0.0;
  out.kappa = kappa;
  out.jtilde = std::sqrt((p.J - p.gamma) * (p.J + p.gamma));
  out.gauge_s = std::move(s);
  return out;
}

DriftResult conserved_drift(const CMatrix& eta, const TimeDependentGenerator& g,
                            const CVector& u0, double tol) {
  if (eta.rows() != u0.size()) throw DimensionError("eta and state dimensions differ");
  constexpr int kSamples = 65;
  std::vector<double> times(kSamples);
  for (int i = 0; i < kSamples; ++i) times[i] = g.horizon() * i / (kSamples - 1);

  const auto states = duhamel_trajectory(g, Source{}, u0, times, tol);
  const double q0 = std::real(states.front().dot(eta * states.front()));
  double worst = 0.0;
  for (const auto& psi : states) {
    const double q = std::real(psi.dot(eta * psi));
    worst = std::max(worst, std::abs(q - q0));
  }

  DriftResult out;
  const double floor = 1e-12 * eta.norm() * u0.squaredNorm();
  if (std::abs(q0) > floor) {
    out.drift = worst / std::abs(q0);
    out.relative = true;
  } else {
    out.drift = worst;
    out.relative = false;
  }
  return out;
}

std::pair<std::vector<int>, std::vector<int>> pairing_involution(
    const std::vector<PauliString>& strings, const CMatrix& pairing) {
  const int count = static_cast<int>(strings.size());
  std::vector<int> partner(strings.size());
  std::vector<int> signs(strings.size(), 1);
  if (count == 0) return {partner, signs};

  const Eigen::Index dim = dim_for_qubits(strings.front().num_qubits());
  if (pairing.rows() != dim || pairing.cols() != dim) {
    throw DimensionError("pairing unitary does not match the register");
  }

  std::vector<CMatrix> dense(strings.size());
  for (int l = 0; l < count; ++l) dense[static_cast<std::size_t>(l)] = pauli_to_dense(strings[l]);

  const double tol = 1e-8 * std::sqrt(static_cast<double>(dim));
  for (int j = 0; j < count; ++j) {
    const CMatrix conj = pairing * dense[static_cast<std::size_t>(j)] * pairing.adjoint();
    partner[static_cast<std::size_t>(j)] = j;
    for (int l = 0; l < count; ++l) {
      const CMatrix& cand = dense[static_cast<std::size_t>(l)];
      if ((conj - cand).norm() <= tol) {
        partner[static_cast<std::size_t>(j)] = l;
        signs[static_cast<std::size_t>(j)] = 1;
        break;
      }
      if ((conj + cand).norm() <= tol) {
        partner[static_cast<std::size_t>(j)] = l;
        signs[static_cast<std::size_t>(j)] = -1;
        break;
      }
    }
  }
  return {partner, signs};
}

CqdriftPlan with_pairing(const CqdriftPlan& plan, const std::vector<int>& partner,
                         const std::vector<int>& signs) {
  if (partner.size() != plan.terms.size() || signs.size() != plan.terms.size()) {
    throw DimensionError("involution tables do not match the plan terms");
  }
  const int count = static_cast<int>(plan.terms.size());
  for (int j = 0; j < count; ++j) {
    const int l = partner[static_cast<std::size_t>(j)];
    if (l < 0 || l >= count || partner[static_cast<std::size_t>(l)] != j) {
      throw DomainError("partner table is not an involution over the plan terms");
    }
  }

  CqdriftPlan out = plan;
  out.mode = ProtectionMode::paired_partner;
  out.partner = partner;
  out.partner_sign = signs;
  out.sampling_cdf.assign(plan.terms.size(), 0.0);
  double total = 0.0;
  for (int j = 0; j < count; ++j) {
    total += plan.terms[static_cast<std::size_t>(j)].weight +
             plan.terms[static_cast<std::size_t>(partner[static_cast<std::size_t>(j)])].weight;
  }
  double acc = 0.0;
  for (int j = 0; j < count; ++j) {
    acc += plan.terms[static_cast<std::size_t>(j)].weight +
           plan.terms[static_cast<std::size_t>(partner[static_cast<std::size_t>(j)])].weight;
    out.sampling_cdf[static_cast<std::size_t>(j)] = total > 0.0 ? acc / total : 0.0;
  }
  if (!out.sampling_cdf.empty()) out.sampling_cdf.back() = 1.0;
  return out;
}

CqdriftPlan protected_plan(const CqdriftPlan& plan, const Intertwiner& eta, ProtectionMode mode,
                           const CVector& u0) {
  if (mode == ProtectionMode::none) {
    CqdriftPlan out = plan;
    out.mode = ProtectionMode::none;
    return out;
  }

  if (mode == ProtectionMode::paired_partner) {
    if (eta.pairing.rows() == 0) throw DomainError("paired mode needs a pairing unitary");
    std::vector<PauliString> strings;
    strings.reserve(plan.terms.size());
    for (const auto& term : plan.terms) strings.push_back(term.string);
    auto [partner, signs] = pairing_involution(strings, eta.pairing);
    return with_pairing(plan, partner, signs);
  }

  const Eigen::Index dim = dim_for_qubits(plan.n_qubits);
  if (eta.eta.rows() != dim || eta.eta.cols() != dim) {
    throw DimensionError("eta does not match the plan register");
  }
  if (u0.size() != dim) throw DimensionError("state does not match the plan register");

  CqdriftPlan out = plan;
  out.mode = ProtectionMode::alternate_reorder;
  out.eta_class.assign(plan.terms.size(), 0);
  const CVector eta_u0 = eta.eta * u0;
  const double tol = 1e-12 * eta_u0.norm() * u0.norm();
  for (std::size_t j = 0; j < plan.terms.size(); ++j) {
    const CVector pu0 = apply_pauli(plan.terms[j].string, u0);
    const double form = -2.0 * std::imag(eta_u0.dot(pu0));
    const double c0 = term_coefficient(out, static_cast<int>(j), plan.t0);
    const double value = (c0 > 0.0 ? form : (c0 < 0.0 ? -form : 0.0));
    if (value > tol) {
      out.eta_class[j] = 1;
    } else if (value < -tol) {
      out.eta_class[j] = -1;
    }
  }
  return out;
}

}  // namespace randlchs
