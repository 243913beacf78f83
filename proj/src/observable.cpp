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

#include "randlchs/observable.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "randlchs/cqdrift.hpp"
#include "randlchs/dense.hpp"

namespace randlchs {
namespace {

void check_hermitian(const PauliSum& obs) {
  const PauliSum flat = obs.simplified();
  double scale = 0.0;
  for (const auto& term : flat.terms()) scale = std::max(scale, std::abs(term.coeff));
  for (const auto& term : flat.terms()) {
    if (std::abs(term.coeff.imag()) > 1e-12 * std::max(scale, 1.0)) {
      throw ContractError("observable must be Hermitian");
    }
  }
}

int part_sign(double value) { return value < 0.0 ? -1 : 1; }

double pair_part(const Complex& cl, const Complex& cj, bool imag_part) {
  const Complex prod = std::conj(cl) * cj;
  return imag_part ? prod.imag() : prod.real();
}

struct PartStats {
  Complex mean{0.0, 0.0};
  double var_re = 0.0;
  double var_im = 0.0;
};

PartStats reduce_samples(const std::vector<Complex>& xs) {
  PartStats out;
  if (xs.empty()) return out;
  Complex sum{0.0, 0.0};
  for (const Complex& x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double sre = 0.0;
    double sim = 0.0;
    for (const Complex& x : xs) {
      const double dre = x.real() - out.mean.real();
      const double dim = x.imag() - out.mean.imag();
      sre += dre * dre;
      sim += dim * dim;
    }
    out.var_re = sre / static_cast<double>(xs.size() - 1);
    out.var_im = sim / static_cast<double>(xs.size() - 1);
  }
  return out;
}

void run_strided(long count, int threads, const std::function<void(long)>& body) {
  const int workers = std::max(1, threads);
  if (workers == 1 || count < 2) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (long i = w; i < count; i += workers) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

PairWeights pair_weights(const QuadratureGrid& grid, std::size_t pair_cap) {
  const std::size_t m = grid.weights.size();
  if (m == 0) throw ContractError("pair weights need a nonempty grid");
  PairWeights pw;
  if (m * m <= pair_cap) {
    pw.cdf_re.reserve(m * m);
    pw.cdf_im.reserve(m * m);
    double acc_re = 0.0;
    double acc_im = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
      for (std::size_t j = 0; j < m; ++j) {
        const Complex prod = std::conj(grid.weights[l]) * grid.weights[j];
        acc_re += std::abs(prod.real());
        acc_im += std::abs(prod.imag());
        pw.cdf_re.push_back(acc_re);
        pw.cdf_im.push_back(acc_im);
      }
    }
    pw.wr = acc_re;
    pw.wi = acc_im;
    return pw;
  }
  pw.factorized = true;
  std::vector<double> re(m);
  std::vector<double> im(m);
  for (std::size_t j = 0; j < m; ++j) {
    re[j] = grid.weights[j].real();
    im[j] = grid.weights[j].imag();
  }
  double wr = 0.0;
  double wi = 0.0;
  for (std::size_t l = 0; l < m; ++l) {
    const double a = re[l];
    const double b = im[l];
    double row_r = 0.0;
    double row_i = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      row_r += std::abs(a * re[j] + b * im[j]);
      row_i += std::abs(a * im[j] - b * re[j]);
    }
    wr += row_r;
    wi += row_i;
  }
  pw.wr = wr;
  pw.wi = wi;
  pw.node_cdf.reserve(m);
  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    acc += std::abs(grid.weights[j]);
    pw.node_cdf.push_back(acc);
  }
  return pw;
}

PairSample sample_pair(const PairWeights& pw, const QuadratureGrid& grid, bool imag_part,
                       Rng& rng) {
  const std::size_t m = grid.weights.size();
  PairSample out;
  out.imag_part = imag_part;
  const double total = imag_part ? pw.wi : pw.wr;
  if (total <= 0.0) throw ContractError("requested part has zero total weight");
  if (!pw.factorized) {
    const auto& cdf = imag_part ? pw.cdf_im : pw.cdf_re;
    const std::size_t idx = rng.categorical(cdf);
    out.l = static_cast<int>(idx / m);
    out.j = static_cast<int>(idx % m);
    out.sign = part_sign(pair_part(grid.weights[out.l], grid.weights[out.j], imag_part));
    return out;
  }
  for (long attempt = 0; attempt < 10000000; ++attempt) {
    const std::size_t l = rng.categorical(pw.node_cdf);
    const std::size_t j = rng.categorical(pw.node_cdf);
    const double denom = std::abs(grid.weights[l]) * std::abs(grid.weights[j]);
    if (denom <= 0.0) continue;
    const double part = pair_part(grid.weights[l], grid.weights[j], imag_part);
    if (rng.uniform() * denom < std::abs(part)) {
      out.l = static_cast<int>(l);
      out.j = static_cast<int>(j);
      out.sign = part_sign(part);
      return out;
    }
  }
  throw ContractError("pair acceptance stalled");
}

MEstimator::MEstimator(const LcuWorkspace& ws, const PauliSum& obs, const CVector& u0, double tol)
    : ws_(&ws), obs_(obs.simplified()), u0_(u0), props_(ws, tol) {
  if (obs.num_qubits() != ws.problem.n_qubits) {
    throw DimensionError("observable register size does not match the problem");
  }
  if (u0.size() != static_cast<Eigen::Index>(dim_for_qubits(ws.problem.n_qubits))) {
    throw DimensionError("initial state dimension does not match the problem");
  }
  check_hermitian(obs_);
  norm_o_ = spectral_norm(assemble_dense(obs_));
  states_.resize(ws.grid.nodes.size());
  built_.assign(ws.grid.nodes.size(), 0);
}

const CVector& MEstimator::node_state(int j) {
  if (j < 0 || static_cast<std::size_t>(j) >= states_.size()) {
    throw DomainError("node index out of range");
  }
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (built_[j]) return states_[j];
  }
  CVector fresh = props_.at(j) * u0_;
  std::lock_guard<std::mutex> lock(mutex_);
  if (!built_[j]) {
    states_[j] = std::move(fresh);
    built_[j] = 1;
  }
  return states_[j];
}

Complex MEstimator::exact_m(int l, int j) {
  const CVector& vl = node_state(l);
  const CVector vj = apply_pauli_sum(obs_, node_state(j));
  return vl.dot(vj);
}

Complex MEstimator::trajectory_m(int l, int j, long r, Rng& rng) {
  if (r <= 0) throw DomainError("trajectory pair needs r >= 1");
  const CqdriftPlan plan_l = node_plan_for(*ws_, l, 0.0, r);
  const CqdriftPlan plan_j = node_plan_for(*ws_, j, 0.0, r);
  const CVector phi_l = run_trajectory(plan_l, u0_, rng).final;
  const CVector phi_j = run_trajectory(plan_j, u0_, rng).final;
  return phi_l.dot(apply_pauli_sum(obs_, phi_j));
}

Complex MEstimator::shot_m(int l, int j, long r, Rng& rng) {
  const Complex m = r <= 0 ? exact_m(l, j) : trajectory_m(l, j, r, rng);
  if (norm_o_ <= 0.0) return Complex{0.0, 0.0};
  const double pre = std::clamp(m.real() / norm_o_, -1.0, 1.0);
  const double pim = std::clamp(m.imag() / norm_o_, -1.0, 1.0);
  const double x = rng.uniform() < 0.5 * (1.0 + pre) ? norm_o_ : -norm_o_;
  const double y = rng.uniform() < 0.5 * (1.0 + pim) ? norm_o_ : -norm_o_;
  return Complex{x, y};
}

Complex estimate_m(MEstimator& est, int l, int j, MMode mode, long r, Rng& rng) {
  switch (mode) {
    case MMode::exact:
      return est.exact_m(l, j);
    case MMode::cqdrift_mean:
      return est.trajectory_m(l, j, r, rng);
    case MMode::shot:
      return est.shot_m(l, j, r, rng);
  }
  throw DomainError("unknown m estimation mode");
}

Algorithm1Result run_algorithm1(MEstimator& est, const PairWeights& pw, long S, MMode mode,
                                long r, std::uint64_t seed, int threads) {
  if (S < 1) throw DomainError("sample count must be positive");
  const LcuWorkspace& ws = est.workspace();
  Algorithm1Result out;
  out.wr = pw.wr;
  out.wi = pw.wi;
  out.samples = S;
  out.shift_scale = std::exp(2.0 * ws.sigma * ws.problem.T);
  PartStats stats[2];
  for (int part = 0; part < 2; ++part) {
    const bool imag_part = part == 1;
    const double w_part = imag_part ? pw.wi : pw.wr;
    if (w_part <= 0.0) continue;
    std::vector<Complex> xs(static_cast<std::size_t>(S));
    run_strided(S, threads, [&](long i) {
      Rng rng(derive_stream(seed, static_cast<std::uint64_t>(i),
                            static_cast<std::uint64_t>(part)));
      const PairSample ps = sample_pair(pw, ws.grid, imag_part, rng);
      const Complex m_hat = estimate_m(est, ps.l, ps.j, mode, r, rng);
      xs[static_cast<std::size_t>(i)] = w_part * static_cast<double>(ps.sign) * m_hat;
    });
    stats[part] = reduce_samples(xs);
  }
  out.estimate = stats[0].mean + kI * stats[1].mean;
  const double inv_s = 1.0 / static_cast<double>(S);
  out.stderr_re = std::sqrt((stats[0].var_re + stats[1].var_im) * inv_s);
  out.stderr_im = std::sqrt((stats[0].var_im + stats[1].var_re) * inv_s);
  return out;
}

Algorithm1Result run_algorithm1(const LcuWorkspace& ws, const PauliSum& obs, const CVector& u0,
                                long S, MMode mode, long r, std::uint64_t seed,
                                const PairWeights* pw, int threads) {
  MEstimator est(ws, obs, u0);
  PairWeights local;
  if (pw == nullptr) {
    local = pair_weights(ws.grid);
    pw = &local;
  }
  return run_algorithm1(est, *pw, S, mode, r, seed, threads);
}

double exhaustive_observable(const LcuWorkspace& ws, const PauliSum& obs, const CVector& u0,
                             double tol) {
  check_hermitian(obs);
  NodePropagators props(ws, tol);
  const Eigen::Index dim = static_cast<Eigen::Index>(dim_for_qubits(ws.problem.n_qubits));
  if (u0.size() != dim) throw DimensionError("initial state dimension does not match the problem");
  CVector v = CVector::Zero(dim);
  for (std::size_t j = 0; j < ws.grid.nodes.size(); ++j) {
    v += ws.grid.weights[j] * (props.at(static_cast<int>(j)) * u0);
  }
  return v.dot(apply_pauli_sum(obs.simplified(), v)).real();
}

Complex exhaustive_pair_sum(MEstimator& est, const PairWeights& pw) {
  if (pw.factorized) throw ContractError("exhaustive enumeration needs exact pair tables");
  const QuadratureGrid& grid = est.workspace().grid;
  const int m = static_cast<int>(grid.weights.size());
  Complex sum_re{0.0, 0.0};
  Complex sum_im{0.0, 0.0};
  for (int l = 0; l < m; ++l) {
    for (int j = 0; j < m; ++j) {
      const Complex prod = std::conj(grid.weights[l]) * grid.weights[j];
      if (prod.real() == 0.0 && prod.imag() == 0.0) continue;
      const Complex m_hat = est.exact_m(l, j);
      sum_re += prod.real() * m_hat;
      sum_im += prod.imag() * m_hat;
    }
  }
  return sum_re + kI * sum_im;
}

long required_samples(double w, double norm_o, double eps, double delta) {
  if (w < 0.0 || norm_o < 0.0) throw DomainError("weight and norm must be nonnegative");
  if (eps <= 0.0 || delta <= 0.0 || delta >= 1.0) {
    throw DomainError("need eps > 0 and delta in (0, 1)");
  }
  const double range = 2.0 * w * norm_o;
  const double raw = range * range * std::log(2.0 / delta) / (2.0 * eps * eps);
  return std::max<long>(1, static_cast<long>(std::ceil(raw)));
}

}  // namespace randlchs
