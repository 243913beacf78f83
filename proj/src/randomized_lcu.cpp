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

#include "randlchs/randomized_lcu.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>

#include "randlchs/dense.hpp"

namespace randlchs {

namespace {

std::vector<double> cumulative(const std::vector<double>& values) {
  std::vector<double> cdf(values.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc += values[i];
    cdf[i] = acc;
  }
  return cdf;
}

std::vector<double> magnitude_cdf(const std::vector<Complex>& weights) {
  std::vector<double> mags(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) mags[i] = std::abs(weights[i]);
  return cumulative(mags);
}

Complex unit_phase(Complex c) {
  const double mag = std::abs(c);
  return mag > 0.0 ? c / mag : Complex{1.0, 0.0};
}

PauliSum node_sum(const PauliSum& a, double k) {
  std::vector<WeightedPauli> terms;
  terms.reserve(a.size());
  for (const auto& t : a.terms()) {
    terms.push_back({Complex{k * t.coeff.real() + t.coeff.imag(), 0.0}, t.string});
  }
  return PauliSum(a.num_qubits(), std::move(terms));
}

double source_l1_in_time(const Source& b, Eigen::Index dim, double T) {
  if (!b || T <= 0.0) return 0.0;
  const int panels = 8;
  const auto& [x, w] = gauss_legendre(32);
  double total = 0.0;
  const double width = T / panels;
  for (int m = 0; m < panels; ++m) {
    const double mid = (m + 0.5) * width, half = 0.5 * width;
    for (std::size_t q = 0; q < x.size(); ++q) {
      const CVector bs = b(mid + half * x[q]);
      if (bs.size() != dim) throw DimensionError("source dimension mismatch");
      total += half * w[q] * bs.lpNorm<1>();
    }
  }
  return total;
}

void run_indexed(long count, int threads, const std::function<void(long)>& body) {
  const int workers = std::max(1, threads);
  if (workers == 1 || count < 2) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (long i = t; i < count; i += workers) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

LcuWorkspace prepare_workspace(const LchsProblem& p, const KernelParams& kernel, double eps) {
  if (p.a.num_qubits() != p.n_qubits) throw DimensionError("generator register mismatch");
  if (!(p.T > 0.0)) throw DomainError("horizon must be positive");
  if (!p.schedules.empty() && p.schedules.size() != p.a.size()) {
    throw DimensionError("one schedule per generator term expected");
  }

  LcuWorkspace ws;
  ws.problem = p;

  const auto [l_part, h_part] = split_hermitian(p.a);
  double lambda_min = 0.0;
  if (p.n_qubits <= kDenseQubitCap) {
    lambda_min = min_eigenvalue_hermitian(assemble_dense(l_part));
  } else {
    lambda_min = -l_part.coeff_l1();
  }
  ws.sigma = std::max(0.0, -lambda_min);
  ws.shifted = ws.sigma > 0.0
                   ? p.a.plus(PauliSum(p.n_qubits,
                                       {{Complex{ws.sigma, 0.0},
                                         PauliString(std::string(
                                             static_cast<std::size_t>(p.n_qubits), 'I'))}}))
                         .simplified()
                   : p.a;

  if (p.n_qubits <= kDenseQubitCap) {
    const Eigen::Index dim = dim_for_qubits(p.n_qubits);
    ws.norm_l = spectral_norm(assemble_dense(l_part) +
                              ws.sigma * CMatrix::Identity(dim, dim));
  } else {
    ws.norm_l = l_part.coeff_l1() + ws.sigma;
  }

  ws.grid = build_grid(kernel, eps, p.T, ws.norm_l);
  ws.node_cdf = magnitude_cdf(ws.grid.weights);

  if (p.b) {
    ws.times = build_time_grid(p.b, dim_for_qubits(p.n_qubits), eps, p.T,
                               ws.shifted.coeff_l1());
    ws.time_cdf = cumulative(ws.times.weights);
  }
  return ws;
}

OuterSample sample_outer(const QuadratureGrid& grid, Rng& rng) {
  if (grid.size() == 0) throw DomainError("empty quadrature grid");
  const auto cdf = magnitude_cdf(grid.weights);
  OuterSample s;
  s.j = static_cast<int>(rng.categorical(cdf));
  s.phase = unit_phase(grid.weights[static_cast<std::size_t>(s.j)]);
  return s;
}

OuterSample sample_outer(const LcuWorkspace& ws, Rng& rng) {
  if (ws.grid.size() == 0) throw DomainError("empty quadrature grid");
  OuterSample s;
  s.j = static_cast<int>(rng.categorical(ws.node_cdf));
  s.phase = unit_phase(ws.grid.weights[static_cast<std::size_t>(s.j)]);
  if (!ws.time_cdf.empty() && ws.time_cdf.back() > 0.0) {
    s.jprime = static_cast<int>(rng.categorical(ws.time_cdf));
    s.phase_prime = Complex{1.0, 0.0};
  }
  return s;
}

NodePropagators::NodePropagators(const LcuWorkspace& ws, double tol)
    : ws_(&ws),
      tol_(tol),
      constant_(ws.problem.schedules.empty()),
      cache_(ws.grid.size()),
      built_(ws.grid.size(), 0) {
  if (constant_) {
    const auto [l_dense, h_dense] = split_hermitian(assemble_dense(ws.shifted));
    dense_l_ = l_dense;
    dense_h_ = h_dense;
  }
}

CMatrix NodePropagators::propagator(double k, double s) const {
  const double span = ws_->problem.T - s;
  if (constant_) {
    const CMatrix g = k * dense_l_ + dense_h_;
    return matrix_exponential(CMatrix(-kI * g), span);
  }
  TimeDependentGenerator gen(node_sum(ws_->shifted, k).scaled(kI), ws_->problem.schedules,
                             ws_->problem.T);
  return time_ordered_propagator(gen, s, ws_->problem.T, tol_);
}

const CMatrix& NodePropagators::at(int j) {
  const auto idx = static_cast<std::size_t>(j);
  std::lock_guard<std::mutex> lock(mutex_);
  if (!built_[idx]) {
    cache_[idx] = propagator(ws_->grid.nodes[idx], 0.0);
    built_[idx] = 1;
  }
  return cache_[idx];
}

CMatrix NodePropagators::from(int j, double s) const {
  return propagator(ws_->grid.nodes[static_cast<std::size_t>(j)], s);
}

CqdriftPlan node_plan_for(const LcuWorkspace& ws, int j, double t0, long r) {
  const double k = ws.grid.nodes[static_cast<std::size_t>(j)];
  if (ws.problem.schedules.empty()) {
    return node_plan(ws.shifted, k, t0, ws.problem.T, r);
  }
  std::vector<TermSpec> specs;
  specs.reserve(ws.shifted.size());
  const auto& terms = ws.shifted.terms();
  for (std::size_t l = 0; l < terms.size(); ++l) {
    TermSpec spec;
    spec.string = terms[l].string;
    spec.coeff = k * terms[l].coeff.real() + terms[l].coeff.imag();
    if (l < ws.problem.schedules.size()) spec.scale = ws.problem.schedules[l];
    specs.push_back(std::move(spec));
  }
  return build_plan(ws.problem.n_qubits, specs, t0, ws.problem.T, r);
}

namespace {

CVector inner_evolved(const LcuWorkspace& ws, int j, double t0, const CVector& start, long r,
                      Rng& rng, InnerMode mode, const PlanHook& hook, NodePropagators* exact) {
  if (mode == InnerMode::exact_u) {
    if (exact) {
      return t0 == 0.0 ? CVector(exact->at(j) * start) : CVector(exact->from(j, t0) * start);
    }
    NodePropagators local(ws);
    return CVector(local.from(j, t0) * start);
  }
  CqdriftPlan plan = node_plan_for(ws, j, t0, r);
  if (hook) plan = hook(plan);
  return run_trajectory(plan, start, rng).final;
}

}  // namespace

ShotResult homogeneous_shot_at(const LcuWorkspace& ws, const OuterSample& sample,
                               const CVector& u0_normalized, long r, Rng& rng, InnerMode mode,
                               const PlanHook& hook, NodePropagators* exact) {
  ShotResult out;
  out.inhomogeneous = false;
  out.j = sample.j;
  out.weight = ws.grid.weight_l1();
  const double unshift = std::exp(ws.sigma * ws.problem.T);
  out.state = sample.phase * unshift *
              inner_evolved(ws, sample.j, 0.0, u0_normalized, r, rng, mode, hook, exact);
  return out;
}

ShotResult inhomogeneous_shot_at(const LcuWorkspace& ws, const OuterSample& sample, long r,
                                 Rng& rng, InnerMode mode, const PlanHook& hook,
                                 NodePropagators* exact) {
  if (sample.jprime < 0 || static_cast<std::size_t>(sample.jprime) >= ws.times.size()) {
    throw DomainError("inhomogeneous shot needs a time-node index");
  }
  ShotResult out;
  out.inhomogeneous = true;
  out.j = sample.j;
  out.jprime = sample.jprime;
  out.weight = ws.grid.weight_l1() * ws.times.weight_l1();

  const auto jp = static_cast<std::size_t>(sample.jprime);
  const CVector& source = ws.times.states[jp];
  if (source.norm() == 0.0) {
    out.state = CVector::Zero(source.size());
    return out;
  }
  const double s = ws.times.nodes[jp];
  const double unshift = std::exp(ws.sigma * (ws.problem.T - s));
  out.state = sample.phase * sample.phase_prime * unshift *
              inner_evolved(ws, sample.j, s, source, r, rng, mode, hook, exact);
  return out;
}

ShotResult homogeneous_shot(const LcuWorkspace& ws, const CVector& u0_normalized, long r,
                            Rng& rng, InnerMode mode, const PlanHook& hook,
                            NodePropagators* exact) {
  OuterSample s;
  s.j = static_cast<int>(rng.categorical(ws.node_cdf));
  s.phase = unit_phase(ws.grid.weights[static_cast<std::size_t>(s.j)]);
  return homogeneous_shot_at(ws, s, u0_normalized, r, rng, mode, hook, exact);
}

ShotResult inhomogeneous_shot(const LcuWorkspace& ws, long r, Rng& rng, InnerMode mode,
                              const PlanHook& hook, NodePropagators* exact) {
  if (ws.time_cdf.empty() || ws.time_cdf.back() <= 0.0) {
    throw DomainError("problem has no source term to sample");
  }
  OuterSample s;
  s.jprime = static_cast<int>(rng.categorical(ws.time_cdf));
  s.j = static_cast<int>(rng.categorical(ws.node_cdf));
  s.phase = unit_phase(ws.grid.weights[static_cast<std::size_t>(s.j)]);
  s.phase_prime = Complex{1.0, 0.0};
  return inhomogeneous_shot_at(ws, s, r, rng, mode, hook, exact);
}

CombinedEstimate combine_solution(const std::vector<ShotResult>& hom,
                                  const std::vector<ShotResult>& inhom, double u0_norm) {
  if (hom.empty() && inhom.empty()) throw ContractError("no shots to combine");

  Eigen::Index dim = 0;
  for (const auto& s : hom) dim = std::max(dim, s.state.size());
  for (const auto& s : inhom) dim = std::max(dim, s.state.size());
  if (dim == 0) throw ContractError("shots carry no state");

  const auto pool_stats = [dim](const std::vector<ShotResult>& pool, double scale, CVector& mean,
                                RVector& var) {
    mean = CVector::Zero(dim);
    var = RVector::Zero(dim);
    if (pool.empty()) return;
    CVector sum = CVector::Zero(dim);
    RVector sumsq = RVector::Zero(dim);
    for (const auto& s : pool) {
      const CVector x = scale * s.weight * s.state;
      sum += x;
      sumsq += x.cwiseAbs2();
    }
    const double n = static_cast<double>(pool.size());
    mean = sum / n;
    if (pool.size() > 1) {
      var = (sumsq - n * mean.cwiseAbs2()).cwiseMax(0.0) / (n - 1.0);
    }
  };

  CombinedEstimate out;
  CVector hom_mean, inhom_mean;
  RVector hom_var, inhom_var;
  pool_stats(hom, u0_norm, hom_mean, hom_var);
  pool_stats(inhom, 1.0, inhom_mean, inhom_var);

  out.estimate = hom_mean + inhom_mean;
  out.stderr_component = RVector::Zero(dim);
  if (hom.size() > 1) out.stderr_component += hom_var / static_cast<double>(hom.size());
  if (inhom.size() > 1) out.stderr_component += inhom_var / static_cast<double>(inhom.size());
  out.stderr_component = out.stderr_component.cwiseSqrt();
  out.hom_count = static_cast<long>(hom.size());
  out.inhom_count = static_cast<long>(inhom.size());
  return out;
}

CMatrix lchs_propagator(const LcuWorkspace& ws, double tol) {
  NodePropagators props(ws, tol);
  const Eigen::Index dim = dim_for_qubits(ws.problem.n_qubits);
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (std::size_t j = 0; j < ws.grid.size(); ++j) {
    sum += ws.grid.weights[j] * props.at(static_cast<int>(j));
  }
  return std::exp(ws.sigma * ws.problem.T) * sum;
}

CVector exhaustive_solution(const LcuWorkspace& ws, const CVector& u0, double tol) {
  const Eigen::Index dim = dim_for_qubits(ws.problem.n_qubits);
  if (u0.size() != dim) throw DimensionError("state dimension mismatch");
  CVector total = lchs_propagator(ws, tol) * u0;

  if (ws.times.size() > 0) {
    NodePropagators props(ws, tol);
    for (std::size_t jp = 0; jp < ws.times.size(); ++jp) {
      const double cprime = ws.times.weights[jp];
      if (cprime == 0.0) continue;
      const double s = ws.times.nodes[jp];
      const double unshift = std::exp(ws.sigma * (ws.problem.T - s));
      CVector duhamel = CVector::Zero(dim);
      for (std::size_t j = 0; j < ws.grid.size(); ++j) {
        duhamel += ws.grid.weights[j] * (props.from(static_cast<int>(j), s) * ws.times.states[jp]);
      }
      total += cprime * unshift * duhamel;
    }
  }
  return total;
}

SolveResult solve(const LchsProblem& p, const CVector& u0, const SolveOptions& opt) {
  LcuWorkspace ws = prepare_workspace(p, opt.kernel, opt.eps);
  const Eigen::Index dim = dim_for_qubits(p.n_qubits);
  if (u0.size() != dim) throw DimensionError("state dimension mismatch");

  const double u0_norm = u0.norm();
  const CVector u0_hat = u0_norm > 0.0 ? CVector(u0 / u0_norm) : u0;
  const long hom_count = u0_norm > 0.0 ? opt.hom_shots : 0;
  const bool has_source = ws.times.size() > 0 && ws.times.weight_l1() > 0.0;
  const long inhom_count = has_source ? opt.inhom_shots : 0;

  std::optional<NodePropagators> props;
  if (opt.mode == InnerMode::exact_u) props.emplace(ws);
  NodePropagators* exact = props ? &*props : nullptr;

  std::vector<ShotResult> hom(static_cast<std::size_t>(hom_count));
  std::vector<ShotResult> inhom(static_cast<std::size_t>(inhom_count));
  run_indexed(hom_count, opt.threads, [&](long i) {
    Rng rng(derive_stream(opt.seed, static_cast<std::uint64_t>(i), 0));
    hom[static_cast<std::size_t>(i)] =
        homogeneous_shot(ws, u0_hat, opt.r, rng, opt.mode, opt.plan_hook, exact);
  });
  run_indexed(inhom_count, opt.threads, [&](long i) {
    Rng rng(derive_stream(opt.seed, static_cast<std::uint64_t>(i), 1));
    inhom[static_cast<std::size_t>(i)] =
        inhomogeneous_shot(ws, opt.r, rng, opt.mode, opt.plan_hook, exact);
  });

  CombinedEstimate combined = combine_solution(hom, inhom, u0_norm);

  SolveResult out;
  out.estimate = std::move(combined.estimate);
  out.stderr_component = std::move(combined.stderr_component);
  out.sigma = ws.sigma;
  out.grid_size = ws.grid.size();
  out.hom_count = combined.hom_count;
  out.inhom_count = combined.inhom_count;
  const double denom = out.estimate.lpNorm<1>();
  const double numer = u0.lpNorm<1>() + source_l1_in_time(p.b, dim, p.T);
  out.qhat = denom > 0.0 ? numer / denom : std::numeric_limits<double>::infinity();
  if (opt.keep_shots) {
    out.shots = std::move(hom);
    out.shots.insert(out.shots.end(), std::make_move_iterator(inhom.begin()),
                     std::make_move_iterator(inhom.end()));
  }
  return out;
}

}  // namespace randlchs
