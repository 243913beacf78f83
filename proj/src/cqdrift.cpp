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

#include "randlchs/cqdrift.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <utility>

#include <Eigen/Eigenvalues>

#include "randlchs/dense.hpp"

namespace randlchs {

namespace {

constexpr int kTimeTableSize = 1024;

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix rotation_dense(const PauliString& p, double angle) {
  const Eigen::Index dim = dim_for_qubits(p.num_qubits());
  CMatrix u = std::cos(angle) * CMatrix::Identity(dim, dim);
  u.noalias() += (-kI * std::sin(angle)) * pauli_to_dense(p);
  return u;
}

void require_constant(const CqdriftPlan& plan, const char* what) {
  for (const auto& term : plan.terms) {
    if (term.scale) throw DomainError(std::string(what) + ": requires a constant-coefficient plan");
  }
}

}  // namespace

long required_segments(double lambda, double eps) {
  if (eps <= 0.0) throw DomainError("required_segments: eps must be positive");
  if (lambda < 0.0) throw DomainError("required_segments: lambda must be nonnegative");
  const double r = std::ceil(4.0 * lambda * lambda / eps);
  return std::max(1L, static_cast<long>(r));
}

CqdriftPlan build_plan(int n_qubits, const std::vector<TermSpec>& specs, double t0, double t1,
                       long r) {
  if (n_qubits < 1) throw DimensionError("build_plan: n_qubits must be positive");
  if (t1 < t0) throw DomainError("build_plan: t1 must be >= t0");
  if (r < 1) throw DomainError("build_plan: r must be >= 1");

  CqdriftPlan plan;
  plan.n_qubits = n_qubits;
  plan.t0 = t0;
  plan.t1 = t1;
  plan.r = static_cast<int>(std::min<long>(r, 1L << 30));
  const double tau = t1 - t0;

  double theta_identity = 0.0;
  for (const auto& spec : specs) {
    if (spec.string.num_qubits() != n_qubits) {
      throw DimensionError("build_plan: term string length mismatch");
    }
    if (spec.string.is_identity()) {
      if (!spec.scale) {
        theta_identity += spec.coeff * tau;
      } else {
        double acc = 0.0;
        double prev = spec.coeff * spec.scale(t0);
        for (int k = 1; k <= kTimeTableSize; ++k) {
          const double t = t0 + tau * k / kTimeTableSize;
          const double cur = spec.coeff * spec.scale(t);
          acc += 0.5 * (prev + cur) * (tau / kTimeTableSize);
          prev = cur;
        }
        theta_identity += acc;
      }
      continue;
    }
    PlanTerm term;
    term.string = spec.string;
    term.coeff = spec.coeff;
    term.scale = spec.scale;
    if (!spec.scale) {
      term.weight = std::abs(spec.coeff) * tau;
    } else {
      std::vector<double> cum(kTimeTableSize + 1, 0.0);
      double prev = std::abs(spec.coeff * spec.scale(t0));
      for (int k = 1; k <= kTimeTableSize; ++k) {
        const double t = t0 + tau * k / kTimeTableSize;
        const double cur = std::abs(spec.coeff * spec.scale(t));
        cum[k] = cum[k - 1] + 0.5 * (prev + cur) * (tau / kTimeTableSize);
        prev = cur;
      }
      term.weight = cum.back();
      if (term.weight > 0.0) {
        for (auto& c : cum) c /= term.weight;
        cum.back() = 1.0;
        term.time_cdf = std::move(cum);
      }
    }
    if (term.weight > 0.0) plan.terms.push_back(std::move(term));
  }

  plan.lambda = 0.0;
  plan.sampling_cdf.clear();
  for (const auto& term : plan.terms) plan.lambda += term.weight;
  double acc = 0.0;
  for (const auto& term : plan.terms) {
    acc += term.weight / plan.lambda;
    plan.sampling_cdf.push_back(acc);
  }
  if (!plan.sampling_cdf.empty()) plan.sampling_cdf.back() = 1.0;

  plan.identity_theta = theta_identity;
  plan.partner.resize(plan.terms.size());
  plan.partner_sign.assign(plan.terms.size(), 1);
  plan.eta_class.assign(plan.terms.size(), 0);
  for (std::size_t i = 0; i < plan.terms.size(); ++i) plan.partner[i] = static_cast<int>(i);
  return plan;
}

CqdriftPlan node_plan(const PauliSum& a, double k, double t0, double t1, long r) {
  std::vector<TermSpec> specs;
  specs.reserve(a.terms().size());
  for (const auto& term : a.terms()) {
    TermSpec spec;
    spec.string = term.string;
    spec.coeff = k * term.coeff.real() + term.coeff.imag();
    specs.push_back(std::move(spec));
  }
  return build_plan(a.num_qubits(), specs, t0, t1, r);
}

double term_coefficient(const CqdriftPlan& plan, int i, double t) {
  const auto& term = plan.terms.at(static_cast<std::size_t>(i));
  return term.scale ? term.coeff * term.scale(t) : term.coeff;
}

std::pair<int, double> sample_step(const CqdriftPlan& plan, Rng& rng) {
  if (plan.terms.empty()) throw DomainError("sample_step: plan has no sampleable terms");
  const int i = static_cast<int>(rng.categorical(plan.sampling_cdf));
  const auto& term = plan.terms[static_cast<std::size_t>(i)];
  double t;
  if (term.time_cdf.empty()) {
    t = rng.uniform(plan.t0, plan.t1);
  } else {
    const double u = rng.uniform();
    const auto it = std::upper_bound(term.time_cdf.begin(), term.time_cdf.end(), u);
    const std::size_t hi = std::min<std::size_t>(
        static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - term.time_cdf.begin())),
        term.time_cdf.size() - 1);
    const double c0 = term.time_cdf[hi - 1];
    const double c1 = term.time_cdf[hi];
    const double frac = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.5;
    const double dt = plan.duration() / kTimeTableSize;
    t = plan.t0 + (static_cast<double>(hi - 1) + frac) * dt;
  }
  return {i, t};
}

void apply_pauli_rotation(const PauliString& p, double angle, CVector& v) {
  const CVector pv = apply_pauli(p, v);
  const double c = std::cos(angle);
  const Complex s = -kI * std::sin(angle);
  v = c * v + s * pv;
}

namespace {

struct SampledStep {
  int term;
  double time;
};

/// Reorders a sampled block so that eta-raising and eta-lowering terms
/// alternate, with neutral terms spread between them; the multiset of steps
/// is preserved exactly.
std::vector<SampledStep> reorder_block(const CqdriftPlan& plan, std::vector<SampledStep> block) {
  std::deque<SampledStep> plus, minus, zero;
  for (const auto& s : block) {
    const int c = plan.eta_class[static_cast<std::size_t>(s.term)];
    if (c > 0) {
      plus.push_back(s);
    } else if (c < 0) {
      minus.push_back(s);
    } else {
      zero.push_back(s);
    }
  }
  std::vector<SampledStep> out;
  out.reserve(block.size());
  bool want_plus = plus.size() >= minus.size();
  bool take_zero = false;
  while (!plus.empty() || !minus.empty() || !zero.empty()) {
    if (take_zero && !zero.empty()) {
      out.push_back(zero.front());
      zero.pop_front();
      take_zero = false;
      continue;
    }
    take_zero = true;
    auto& primary = want_plus ? plus : minus;
    auto& secondary = want_plus ? minus : plus;
    if (!primary.empty()) {
      out.push_back(primary.front());
      primary.pop_front();
      want_plus = !want_plus;
    } else if (!secondary.empty()) {
      out.push_back(secondary.front());
      secondary.pop_front();
      want_plus = !want_plus;
    }
  }
  return out;
}

class TrajectoryRunner {
 public:
  TrajectoryRunner(const CqdriftPlan& plan, const CVector& u0, Rng& rng)
      : plan_(plan), rng_(rng), state_(u0) {
    if (u0.size() != dim_for_qubits(plan.n_qubits)) {
      throw DimensionError("run_trajectory: state dimension mismatch");
    }
  }

  /// Applies segments while segment index < upto.
  void advance(int upto, Trajectory* log) {
    if (plan_.lambda <= 0.0 || plan_.terms.empty()) {
      applied_ = upto;
      return;
    }
    while (applied_ < upto) {
      if (plan_.mode == ProtectionMode::alternate_reorder) {
        const int block = std::max(1, plan_.reorder_block);
        const int m = std::min(block, upto - applied_);
        std::vector<SampledStep> buf;
        buf.reserve(static_cast<std::size_t>(m));
        for (int s = 0; s < m; ++s) {
          const auto [i, t] = sample_step(plan_, rng_);
          buf.push_back({i, t});
        }
        for (const auto& s : reorder_block(plan_, std::move(buf))) {
          apply_plain(s.term, s.time, log);
        }
        applied_ += m;
      } else {
        const auto [i, t] = sample_step(plan_, rng_);
        if (plan_.mode == ProtectionMode::paired_partner) {
          apply_paired(i, t, log);
        } else {
          apply_plain(i, t, log);
        }
        ++applied_;
      }
    }
  }

  /// Snapshot at fraction frac of the total duration, with pro-rated identity phase.
  CVector snapshot(double frac) const {
    return std::exp(-kI * (plan_.identity_theta * frac)) * state_;
  }

  CVector finish() { return identity_phase(plan_) * state_; }

 private:
  void apply_one(int term, double time, double angle, Trajectory* log) {
    apply_pauli_rotation(plan_.terms[static_cast<std::size_t>(term)].string, angle, state_);
    if (log != nullptr) log->steps.push_back({term, time, angle});
  }

  void apply_plain(int i, double t, Trajectory* log) {
    const double angle = (plan_.lambda / plan_.r) * sign_of(term_coefficient(plan_, i, t));
    apply_one(i, t, angle, log);
  }

  void apply_paired(int i, double t, Trajectory* log) {
    const int j = plan_.partner[static_cast<std::size_t>(i)];
    const double psign = static_cast<double>(plan_.partner_sign[static_cast<std::size_t>(i)]);
    double half;
    if (plan_.literal_pair_angle) {
      half = 0.5 * plan_.duration() / plan_.r * term_coefficient(plan_, i, t);
    } else {
      half = 0.5 * plan_.lambda / plan_.r * sign_of(term_coefficient(plan_, i, t));
    }
    apply_one(i, t, half, log);
    apply_one(j, t, half * psign, log);
  }

  const CqdriftPlan& plan_;
  Rng& rng_;
  CVector state_;
  int applied_ = 0;
};

}  // namespace

Complex identity_phase(const CqdriftPlan& plan) { return std::exp(-kI * plan.identity_theta); }

Trajectory run_trajectory(const CqdriftPlan& plan, const CVector& u0, Rng& rng) {
  Trajectory out;
  out.steps.reserve(static_cast<std::size_t>(plan.r));
  TrajectoryRunner runner(plan, u0, rng);
  runner.advance(plan.r, &out);
  out.final = runner.finish();
  return out;
}

Trajectory run_trajectory(const CqdriftPlan& plan, const CVector& u0, std::uint64_t seed) {
  Rng rng(seed);
  return run_trajectory(plan, u0, rng);
}

std::vector<CVector> run_trajectory_recorded(const CqdriftPlan& plan, const CVector& u0,
                                             const std::vector<double>& record_times, Rng& rng) {
  std::vector<CVector> out;
  out.reserve(record_times.size());
  TrajectoryRunner runner(plan, u0, rng);
  const double tau = plan.duration();
  for (double t : record_times) {
    if (t < plan.t0 - 1e-12 || t > plan.t1 + 1e-12) {
      throw DomainError("run_trajectory_recorded: record time outside plan window");
    }
    const double frac = tau > 0.0 ? std::clamp((t - plan.t0) / tau, 0.0, 1.0) : 1.0;
    const int upto = static_cast<int>(std::lround(frac * plan.r));
    runner.advance(upto, nullptr);
    out.push_back(runner.snapshot(frac));
  }
  runner.advance(plan.r, nullptr);
  return out;
}

CMatrix channel_average(const CqdriftPlan& plan, const CMatrix& rho0, int trials,
                        std::uint64_t seed) {
  if (trials < 1) throw DomainError("channel_average: trials must be >= 1");
  const Eigen::Index dim = dim_for_qubits(plan.n_qubits);
  if (rho0.rows() != dim || rho0.cols() != dim) {
    throw DimensionError("channel_average: rho0 dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho0);
  std::vector<double> cdf;
  double total = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) total += std::max(0.0, es.eigenvalues()(i));
  if (total <= 0.0) throw DomainError("channel_average: rho0 has no positive weight");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    acc += std::max(0.0, es.eigenvalues()(i)) / total;
    cdf.push_back(acc);
  }
  cdf.back() = 1.0;

  CMatrix mean = CMatrix::Zero(dim, dim);
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_stream(seed, static_cast<std::uint64_t>(t)));
    const auto which = rng.categorical(cdf);
    const CVector start = es.eigenvectors().col(static_cast<Eigen::Index>(which));
    const Trajectory traj = run_trajectory(plan, start, rng);
    mean.noalias() += traj.final * traj.final.adjoint();
  }
  return mean / static_cast<double>(trials);
}

CMatrix plan_dense_generator(const CqdriftPlan& plan) {
  require_constant(plan, "plan_dense_generator");
  const Eigen::Index dim = dim_for_qubits(plan.n_qubits);
  CMatrix g = CMatrix::Zero(dim, dim);
  for (const auto& term : plan.terms) g.noalias() += term.coeff * pauli_to_dense(term.string);
  const double tau = plan.duration();
  if (tau > 0.0) g.diagonal().array() += plan.identity_theta / tau;
  return g;
}

CMatrix plan_segment_superoperator(const CqdriftPlan& plan) {
  require_constant(plan, "plan_segment_superoperator");
  if (plan.mode == ProtectionMode::alternate_reorder) {
    throw DomainError("plan_segment_superoperator: no per-segment channel in reorder mode");
  }
  if (plan.terms.empty()) throw DomainError("plan_segment_superoperator: empty plan");
  const Eigen::Index dim = dim_for_qubits(plan.n_qubits);
  CMatrix sup = CMatrix::Zero(dim * dim, dim * dim);
  const double theta = plan.lambda / plan.r;
  for (std::size_t i = 0; i < plan.terms.size(); ++i) {
    const double p = plan.terms[i].weight / plan.lambda;
    const double s = sign_of(plan.terms[i].coeff);
    CMatrix u;
    if (plan.mode == ProtectionMode::paired_partner) {
      const int j = plan.partner[i];
      const double psign = static_cast<double>(plan.partner_sign[i]);
      u = rotation_dense(plan.terms[static_cast<std::size_t>(j)].string, 0.5 * theta * s * psign) *
          rotation_dense(plan.terms[i].string, 0.5 * theta * s);
    } else {
      u = rotation_dense(plan.terms[i].string, theta * s);
    }
    sup.noalias() += p * kron(u.conjugate(), u);
  }
  return sup;
}

CMatrix exact_channel_output(const CqdriftPlan& plan, const CMatrix& rho0) {
  const Eigen::Index dim = dim_for_qubits(plan.n_qubits);
  if (rho0.rows() != dim || rho0.cols() != dim) {
    throw DimensionError("exact_channel_output: rho0 dimension mismatch");
  }
  if (plan.terms.empty()) return rho0;
  CMatrix sup = plan_segment_superoperator(plan);
  Eigen::Map<const CVector> vec_in(rho0.data(), dim * dim);
  CVector v = vec_in;
  long remaining = plan.r;
  CMatrix base = std::move(sup);
  while (remaining > 0) {
    if (remaining & 1L) v = base * v;
    remaining >>= 1;
    if (remaining > 0) base = base * base;
  }
  return Eigen::Map<const CMatrix>(v.data(), dim, dim);
}

CMatrix ideal_channel_output(const CqdriftPlan& plan, const CMatrix& rho0) {
  const CMatrix g = plan_dense_generator(plan);
  const CMatrix u = matrix_exponential(-kI * g, plan.duration());
  return u * rho0 * u.adjoint();
}

}  // namespace randlchs
