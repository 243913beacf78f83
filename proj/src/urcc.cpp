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

#include "randlchs/urcc.hpp"

#include <algorithm>
#include <cmath>

#include "randlchs/cqdrift.hpp"

namespace randlchs {
namespace {

constexpr int kRateScanPoints = 257;
constexpr double kEnvelopeSlack = 1.1;

void check_real_coefficients(const TimeDependentGenerator& g) {
  double scale = 0.0;
  for (const auto& term : g.base().terms()) scale = std::max(scale, std::abs(term.coeff));
  for (const auto& term : g.base().terms()) {
    if (std::abs(term.coeff.imag()) > 1e-12 * std::max(scale, 1.0)) {
      throw ContractError("path sampling needs a Hermitian generator with real coefficients");
    }
  }
}

void check_hermitian_observable(const PauliSum& obs) {
  const PauliSum flat = obs.simplified();
  double scale = 0.0;
  for (const auto& term : flat.terms()) scale = std::max(scale, std::abs(term.coeff));
  for (const auto& term : flat.terms()) {
    if (std::abs(term.coeff.imag()) > 1e-12 * std::max(scale, 1.0)) {
      throw ContractError("observable must be Hermitian");
    }
  }
}

double total_rate(const TimeDependentGenerator& g, double t) {
  double rate = 0.0;
  for (std::size_t p = 0; p < g.base().terms().size(); ++p) {
    rate += std::abs(g.base().terms()[p].coeff.real() * g.schedule_value(p, t));
  }
  return rate;
}

double window_mass(const TimeDependentGenerator& g, double t0, double t1) {
  if (g.time_independent()) return g.base().coeff_l1() * (t1 - t0);
  const int n = 512;
  const double h = (t1 - t0) / n;
  double sum = total_rate(g, t0) + total_rate(g, t1);
  for (int i = 1; i < n; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * total_rate(g, t0 + i * h);
  }
  return sum * h / 3.0;
}

/// Term draw at time t with probability |alpha_p(t)| / rate(t); returns the
/// index and the coefficient sign.
std::pair<int, int> draw_term(const TimeDependentGenerator& g, double t, Rng& rng) {
  const auto& terms = g.base().terms();
  double total = 0.0;
  for (std::size_t p = 0; p < terms.size(); ++p) {
    total += std::abs(terms[p].coeff.real() * g.schedule_value(p, t));
  }
  const double u = rng.uniform() * total;
  double acc = 0.0;
  for (std::size_t p = 0; p < terms.size(); ++p) {
    const double value = terms[p].coeff.real() * g.schedule_value(p, t);
    acc += std::abs(value);
    if (u < acc || p + 1 == terms.size()) {
      return {static_cast<int>(p), value < 0.0 ? -1 : 1};
    }
  }
  throw ContractError("term draw fell through an empty generator");
}

struct RestructuredSegment {
  double theta = 0.0;
  double mu0 = 0.0;
  double mu1 = 0.0;
  double mu_tail = 0.0;
  double c_seg = 1.0;
};

RestructuredSegment make_segment(double theta) {
  RestructuredSegment seg;
  seg.theta = theta;
  seg.mu0 = 1.0 - std::cos(theta);
  seg.mu1 = theta - std::sin(theta);
  seg.mu_tail = std::expm1(theta) - theta;
  seg.c_seg = 1.0 + seg.mu0 + seg.mu1 + seg.mu_tail;
  return seg;
}

long draw_tail_count(double theta, double mu_tail, Rng& rng) {
  const double target = rng.uniform() * mu_tail;
  double term = theta * theta / 2.0;
  double acc = term;
  long l = 2;
  while (acc < target && l < 2000) {
    ++l;
    term *= theta / static_cast<double>(l);
    acc += term;
  }
  return l;
}

struct HamiltonianTerms {
  std::vector<PauliString> strings;
  std::vector<int> signs;
  std::vector<double> cdf;
};

HamiltonianTerms flatten_terms(const TimeDependentGenerator& g) {
  HamiltonianTerms out;
  double acc = 0.0;
  for (const auto& term : g.base().terms()) {
    out.strings.push_back(term.string);
    out.signs.push_back(term.coeff.real() < 0.0 ? -1 : 1);
    acc += std::abs(term.coeff.real());
    out.cdf.push_back(acc);
  }
  if (out.cdf.empty() || out.cdf.back() <= 0.0) {
    throw ContractError("path sampling needs a nonzero generator");
  }
  return out;
}

/// One segment of the restructured channel; multiplies weight by
/// C_s x (branch phase) and advances the state, keeping it unit norm.
void restructured_step(const HamiltonianTerms& terms, const RestructuredSegment& seg,
                       CVector& state, Complex& weight, Rng& rng) {
  const double u = rng.uniform() * seg.c_seg;
  weight *= seg.c_seg;
  if (u < 1.0) {
    const std::size_t p = rng.categorical(terms.cdf);
    apply_pauli_rotation(terms.strings[p], seg.theta * terms.signs[p], state);
    return;
  }
  if (u < 1.0 + seg.mu0) return;
  if (u < 1.0 + seg.mu0 + seg.mu1) {
    const std::size_t p = rng.categorical(terms.cdf);
    state = apply_pauli(terms.strings[p], state);
    weight *= -kI * static_cast<double>(terms.signs[p]);
    return;
  }
  const long l = draw_tail_count(seg.theta, seg.mu_tail, rng);
  for (long k = 0; k < l; ++k) {
    const std::size_t p = rng.categorical(terms.cdf);
    state = apply_pauli(terms.strings[p], state);
    weight *= -kI * static_cast<double>(terms.signs[p]);
  }
}

}  // namespace

double urcc_mass(const TimeDependentGenerator& g) {
  check_real_coefficients(g);
  return window_mass(g, 0.0, g.horizon());
}

long urcc_segments(const TimeDependentGenerator& g) {
  const double mass = urcc_mass(g);
  return std::max<long>(1, static_cast<long>(std::ceil(mass * mass)));
}

PoissonPath urcc_sample_path(const TimeDependentGenerator& g, double t0, double t1, Rng& rng) {
  check_real_coefficients(g);
  if (!(t1 >= t0)) throw DomainError("path window must be ordered");
  PoissonPath path;
  path.mass = window_mass(g, t0, t1);
  double envelope = 0.0;
  for (int i = 0; i < kRateScanPoints; ++i) {
    const double t = t0 + (t1 - t0) * i / (kRateScanPoints - 1);
    envelope = std::max(envelope, total_rate(g, t));
  }
  envelope *= kEnvelopeSlack;
  if (envelope <= 0.0) return path;
  double t = t0;
  while (true) {
    t += rng.exponential(envelope);
    if (t >= t1) break;
    const double rate = total_rate(g, t);
    if (rate > envelope * (1.0 + 1e-12)) {
      throw ContractError("rate envelope exceeded; schedule varies faster than the scan");
    }
    if (rng.uniform() * envelope >= rate) continue;
    const auto [index, sign] = draw_term(g, t, rng);
    path.times.push_back(t);
    path.indices.push_back(index);
    path.phase *= -kI * static_cast<double>(sign);
  }
  return path;
}

CVector urcc_apply_path(const TimeDependentGenerator& g, const PoissonPath& path,
                        const CVector& u0) {
  if (u0.size() != static_cast<Eigen::Index>(dim_for_qubits(g.num_qubits()))) {
    throw DimensionError("state size does not match the generator register");
  }
  CVector state = u0;
  for (int index : path.indices) {
    state = apply_pauli(g.base().terms()[static_cast<std::size_t>(index)].string, state);
  }
  return state;
}

UrccResult urcc_estimate(const TimeDependentGenerator& g, const CVector& u0, const PauliSum& obs,
                         long S, long r, std::uint64_t seed, double variance_budget) {
  if (S < 1) throw DomainError("sample count must be positive");
  if (r < 1) throw DomainError("segment count must be positive");
  check_real_coefficients(g);
  check_hermitian_observable(obs);
  if (obs.num_qubits() != g.num_qubits()) {
    throw DimensionError("observable register size does not match the generator");
  }
  if (u0.size() != static_cast<Eigen::Index>(dim_for_qubits(g.num_qubits()))) {
    throw DimensionError("state size does not match the generator register");
  }
  const PauliSum flat_obs = obs.simplified();
  const double horizon = g.horizon();
  const double tau = horizon / static_cast<double>(r);

  UrccResult out;
  out.samples = S;

  HamiltonianTerms terms;
  RestructuredSegment seg;
  std::vector<double> segment_masses;
  if (g.time_independent()) {
    terms = flatten_terms(g);
    seg = make_segment(g.base().coeff_l1() * tau);
    out.overhead = std::pow(seg.c_seg, static_cast<double>(r));
  } else {
    double overhead = 1.0;
    segment_masses.reserve(static_cast<std::size_t>(r));
    for (long s = 0; s < r; ++s) {
      const double mass = window_mass(g, s * tau, (s + 1) * tau);
      segment_masses.push_back(mass);
      overhead *= std::exp(mass);
    }
    out.overhead = overhead;
  }

  const auto run_trajectory_pairhalf = [&](Rng& rng, Complex& weight) {
    CVector state = u0;
    weight = Complex{1.0, 0.0};
    if (g.time_independent()) {
      for (long s = 0; s < r; ++s) restructured_step(terms, seg, state, weight, rng);
    } else {
      for (long s = 0; s < r; ++s) {
        const PoissonPath path = urcc_sample_path(g, s * tau, (s + 1) * tau, rng);
        state = urcc_apply_path(g, path, state);
        weight *= std::exp(segment_masses[static_cast<std::size_t>(s)]) * path.phase;
      }
    }
    return state;
  };

  double sum = 0.0;
  double sumsq = 0.0;
  for (long i = 0; i < S; ++i) {
    Rng rng(derive_stream(seed, static_cast<std::uint64_t>(i), 0));
    Complex w1;
    Complex w2;
    const CVector phi1 = run_trajectory_pairhalf(rng, w1);
    const CVector phi2 = run_trajectory_pairhalf(rng, w2);
    const Complex overlap = phi1.dot(apply_pauli_sum(flat_obs, phi2));
    const double sample = (std::conj(w1) * w2 * overlap).real();
    sum += sample;
    sumsq += sample * sample;
  }
  out.estimate = sum / static_cast<double>(S);
  if (S > 1) {
    const double var =
        std::max(0.0, (sumsq - static_cast<double>(S) * out.estimate * out.estimate) /
                          static_cast<double>(S - 1));
    out.sample_variance = var;
    out.stderr_value = std::sqrt(var / static_cast<double>(S));
  }
  out.variance_warning = variance_budget >= 0.0 && out.sample_variance > variance_budget;
  return out;
}

}  // namespace randlchs
