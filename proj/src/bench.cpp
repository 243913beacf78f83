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

#include "randlchs/bench.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

#include "randlchs/dense.hpp"
#include "randlchs/observable.hpp"
#include "randlchs/rng.hpp"

namespace randlchs {
namespace {

// Stream families of the master seed: outer node draws are keyed by
// (seed, shot) only, so every method and every r of one experiment sees the
// same node sequence (common random numbers); trajectory streams are likewise
// shared so that curves over r differ mainly by sampler bias.
constexpr std::uint64_t kBenchOuter = 1ull << 32;
constexpr std::uint64_t kBenchInner = 2ull << 32;
constexpr std::uint64_t kTraceOuter = 3ull << 32;
constexpr std::uint64_t kTraceInner = 4ull << 32;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
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

void validate_experiment(const ExperimentConfig& cfg) {
  if (cfg.model != "tfim" && cfg.model != "hn") {
    throw DomainError("unknown model: " + cfg.model);
  }
  if (!(cfg.T > 0.0)) throw DomainError("T must be positive");
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
  if (cfg.r_schedule.empty()) throw DomainError("r schedule must be nonempty");
  long prev = 0;
  for (long r : cfg.r_schedule) {
    if (r < 1 || r <= prev) throw DomainError("r schedule must be ascending positive");
    prev = r;
  }
  if (cfg.shots < 2) throw DomainError("shots must be >= 2");
  if (cfg.seeds < 1) throw DomainError("seed count must be >= 1");
  if (cfg.protection != "paired" && cfg.protection != "alternate") {
    throw DomainError("protection must be paired or alternate");
  }
  if (cfg.pairing != "identity" && cfg.pairing != "spin-flip" && cfg.pairing != "reflection" &&
      cfg.pairing != "phase") {
    throw DomainError("pairing must be identity, spin-flip, reflection, or phase");
  }
  if (cfg.trace_points < 2) throw DomainError("trace points must be >= 2");
  if (cfg.trace_shots < 2) throw DomainError("trace shots must be >= 2");
  if (cfg.threads < 0) throw DomainError("threads must be >= 0");
}

CVector initial_state(const std::string& spec, int n_qubits) {
  const Eigen::Index dim = dim_for_qubits(n_qubits);
  if (spec == "plus") {
    return CVector::Constant(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  }
  if (spec == "zero") {
    CVector v = CVector::Zero(dim);
    v(0) = 1.0;
    return v;
  }
  if (spec.rfind("site:", 0) == 0) {
    const std::string tail = spec.substr(5);
    char* end = nullptr;
    const long site = std::strtol(tail.c_str(), &end, 10);
    if (end == tail.c_str() || *end != '\0' || site < 1 || site > n_qubits) {
      throw DomainError("initial site out of range: " + spec);
    }
    CVector v = CVector::Zero(dim);
    v(Eigen::Index{1} << (n_qubits - site)) = 1.0;
    return v;
  }
  throw DomainError("unknown initial state: " + spec);
}

struct Arm {
  std::string name;
  PlanHook hook;
};

PlanHook paired_hook(const ModelSetup& m, const LcuWorkspace& ws) {
  CqdriftPlan probe = node_plan_for(ws, 0, 0.0, 1);
  std::vector<PauliString> strings;
  strings.reserve(probe.terms.size());
  for (const auto& term : probe.terms) strings.push_back(term.string);
  auto tables = std::make_shared<std::pair<std::vector<int>, std::vector<int>>>(
      pairing_involution(strings, m.eta.pairing));
  return [tables](const CqdriftPlan& plan) {
    return with_pairing(plan, tables->first, tables->second);
  };
}

PlanHook alternate_hook(const ModelSetup& m) {
  const Intertwiner eta = m.eta;
  const CVector u0 = m.u0;
  return [eta, u0](const CqdriftPlan& plan) {
    return protected_plan(plan, eta, ProtectionMode::alternate_reorder, u0);
  };
}

TracePoint observe_split(const ModelSetup& m, const CVector& va, const CVector& vb, double t) {
  TracePoint pt;
  pt.t = t;
  const double den = std::real(va.dot(vb));
  pt.norm = std::sqrt(std::max(0.0, den));
  if (den > 0.0) {
    pt.magnetization = std::real(va.dot(apply_pauli_sum(m.magnetization, vb))) / den;
    pt.global_spin = std::real(va.dot(apply_pauli_sum(m.global_spin, vb))) / den;
    if (m.has_current) pt.current = std::real(va.dot(apply_pauli_sum(m.current, vb))) / den;
  }
  pt.eta = std::real(va.dot(m.eta.eta * vb));
  return pt;
}

double headline_value(const TracePoint& pt, bool use_current) {
  return use_current ? pt.current : pt.magnetization;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_csv(const std::string& dir, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::string path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

void close_csv(std::ofstream& out, const std::string& name) {
  out.flush();
  if (!out) throw IoError("write failed for " + name);
}

void write_trace_row(std::ofstream& out, const TracePoint& pt, const std::string& method, long r,
                     int seed) {
  out << fmt(pt.t) << ',' << fmt(pt.magnetization) << ',' << fmt(pt.global_spin) << ','
      << fmt(pt.current) << ',' << fmt(pt.eta) << ',' << fmt(pt.norm) << ',' << method << ',' << r
      << ',' << seed << '\n';
}

int ceil_log2(long m) {
  int bits = 0;
  long cap = 1;
  while (cap < m) {
    cap *= 2;
    ++bits;
  }
  return bits;
}

}  // namespace

ExperimentConfig default_experiment(const std::string& model) {
  ExperimentConfig cfg;
  cfg.model = model;
  if (model == "tfim") {
    cfg.initial = "plus";
    cfg.protection = "paired";
    cfg.pairing = "reflection";
  } else if (model == "hn") {
    cfg.initial = "site:1";
    cfg.protection = "paired";
    cfg.pairing = "phase";
  } else {
    throw DomainError("unknown model: " + model);
  }
  validate_experiment(cfg);
  return cfg;
}

ExperimentConfig experiment_from_config(const ConfigFile& file) {
  ExperimentConfig cfg = default_experiment(file.get_string("model", "name", "tfim"));
  if (cfg.model == "tfim") {
    cfg.tfim.n = static_cast<int>(file.get_long("model", "n", cfg.tfim.n));
    cfg.tfim.J = file.get_double("model", "J", cfg.tfim.J);
    cfg.tfim.g = file.get_double("model", "g", cfg.tfim.g);
    cfg.tfim.gamma = file.get_double("model", "gamma", cfg.tfim.gamma);
  } else {
    cfg.hn.sites = static_cast<int>(file.get_long("model", "sites", cfg.hn.sites));
    cfg.hn.J = file.get_double("model", "J", cfg.hn.J);
    cfg.hn.gamma = file.get_double("model", "gamma", cfg.hn.gamma);
    cfg.hn.V = file.get_double("model", "V", cfg.hn.V);
  }
  cfg.initial = file.get_string("model", "initial", cfg.initial);
  cfg.T = file.get_double("run", "T", cfg.T);
  cfg.beta = file.get_double("run", "beta", cfg.beta);
  cfg.eps = file.get_double("run", "eps", cfg.eps);
  cfg.r_schedule = file.get_longs("run", "r_schedule", cfg.r_schedule);
  cfg.shots = file.get_long("run", "shots", cfg.shots);
  cfg.seeds = static_cast<int>(file.get_long("run", "seeds", cfg.seeds));
  cfg.protection = file.get_string("run", "protection", cfg.protection);
  cfg.pairing = file.get_string("run", "pairing", cfg.pairing);
  cfg.seed = static_cast<std::uint64_t>(file.get_long("run", "seed", static_cast<long>(cfg.seed)));
  cfg.threads = static_cast<int>(file.get_long("run", "threads", cfg.threads));
  cfg.out_dir = file.get_string("run", "out", cfg.out_dir);
  cfg.trace_points = static_cast<int>(file.get_long("traces", "points", cfg.trace_points));
  cfg.trace_shots = file.get_long("traces", "shots", cfg.trace_shots);
  validate_experiment(cfg);
  return cfg;
}

ModelSetup build_model(const ExperimentConfig& cfg) {
  validate_experiment(cfg);
  ModelSetup m;
  m.name = cfg.model;
  m.T = cfg.T;
  if (cfg.model == "tfim") {
    if (cfg.tfim.n < 2 || cfg.tfim.n > kDenseQubitCap) {
      throw DomainError("tfim size outside the dense range");
    }
    m.n_qubits = cfg.tfim.n;
    m.a = build_tfim(cfg.tfim);
    m.eta = recursive_eta(assemble_dense(m.a), {ParityKind::spin_flip, m.n_qubits}, 0.0, 1);
  } else {
    if (cfg.hn.sites < 2 || cfg.hn.sites > kDenseQubitCap) {
      throw DomainError("hn size outside the dense range");
    }
    m.n_qubits = cfg.hn.sites;
    m.a = build_hn(cfg.hn);
    m.eta = hn_intertwiner(cfg.hn);
    m.current = hn_current_op(cfg.hn);
    m.has_current = true;
  }
  if (cfg.pairing == "identity") {
    m.eta.pairing = parity_dense({ParityKind::identity, m.n_qubits});
  } else if (cfg.pairing == "spin-flip") {
    m.eta.pairing = parity_dense({ParityKind::spin_flip, m.n_qubits});
  } else if (cfg.pairing == "reflection") {
    m.eta.pairing = parity_dense({ParityKind::spatial_reflection, m.n_qubits});
  } else {
    const Eigen::Index dim = Eigen::Index{1} << m.n_qubits;
    CMatrix s = CMatrix::Zero(dim, dim);
    const Complex phases[4] = {Complex(1.0, 0.0), kI, Complex(-1.0, 0.0), -kI};
    for (Eigen::Index x = 0; x < dim; ++x) {
      s(x, x) = phases[std::popcount(static_cast<unsigned long long>(x)) % 4];
    }
    m.eta.pairing = s;
  }
  m.magnetization = magnetization_op(m.n_qubits);
  m.global_spin = global_spin_op(m.n_qubits);
  m.u0 = initial_state(cfg.initial, m.n_qubits);
  m.schro = TimeDependentGenerator(m.a.scaled(kI), cfg.T);
  m.problem = LchsProblem{m.n_qubits, m.a.scaled(kI), {}, {}, cfg.T};
  return m;
}

BenchmarkResult run_benchmark(const ExperimentConfig& cfg) {
  const ModelSetup m = build_model(cfg);
  const KernelParams kernel{cfg.beta};
  const LcuWorkspace ws = prepare_workspace(m.problem, kernel, cfg.eps);

  const CVector u_exact =
      matrix_exponential(CMatrix(-kI * assemble_dense(m.a)), cfg.T) * m.u0;
  const CVector ue = u_exact.normalized();

  std::vector<Arm> arms;
  arms.push_back({"rand", PlanHook{}});
  arms.push_back({"sym-paired", paired_hook(m, ws)});
  arms.push_back({"sym-alternate", alternate_hook(m)});

  const long n_arms = static_cast<long>(arms.size());
  const long n_r = static_cast<long>(cfg.r_schedule.size());
  const long total = n_arms * n_r * cfg.seeds;

  BenchmarkResult result;
  result.trials.resize(static_cast<std::size_t>(total));
  run_strided(total, resolve_threads(cfg.threads), [&](long slot) {
    const long arm_i = slot / (n_r * cfg.seeds);
    const long ri = (slot / cfg.seeds) % n_r;
    const int seed_i = static_cast<int>(slot % cfg.seeds);
    const long r = cfg.r_schedule[static_cast<std::size_t>(ri)];

    CVector sum = CVector::Zero(m.u0.size());
    for (long s = 0; s < cfg.shots; ++s) {
      Rng outer(derive_stream(cfg.seed, kBenchOuter | static_cast<std::uint64_t>(seed_i),
                              static_cast<std::uint64_t>(s)));
      const OuterSample sample = sample_outer(ws, outer);
      Rng inner(derive_stream(cfg.seed, kBenchInner | static_cast<std::uint64_t>(seed_i),
                              static_cast<std::uint64_t>(s)));
      const ShotResult shot = homogeneous_shot_at(ws, sample, m.u0, r, inner, InnerMode::cqdrift,
                                                  arms[static_cast<std::size_t>(arm_i)].hook);
      sum += shot.weight * shot.state;
    }
    const CVector vhat = sum / static_cast<double>(cfg.shots);

    TrialRecord rec;
    rec.r = r;
    rec.seed = seed_i;
    rec.method = arms[static_cast<std::size_t>(arm_i)].name;
    const double norm = vhat.norm();
    if (norm > 0.0) {
      const CVector vn = vhat / norm;
      rec.error = (vn - ue).norm();
      const double overlap = std::abs(vn.dot(ue));
      rec.trace_distance = std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
    } else {
      rec.error = 2.0;
      rec.trace_distance = 1.0;
    }
    result.trials[static_cast<std::size_t>(slot)] = std::move(rec);
  });

  for (long arm_i = 0; arm_i < n_arms; ++arm_i) {
    for (long ri = 0; ri < n_r; ++ri) {
      double mean = 0.0;
      for (int i = 0; i < cfg.seeds; ++i) {
        mean += result.trials[static_cast<std::size_t>((arm_i * n_r + ri) * cfg.seeds + i)].error;
      }
      mean /= static_cast<double>(cfg.seeds);
      double var = 0.0;
      for (int i = 0; i < cfg.seeds; ++i) {
        const double d =
            result.trials[static_cast<std::size_t>((arm_i * n_r + ri) * cfg.seeds + i)].error -
            mean;
        var += d * d;
      }
      var /= static_cast<double>(cfg.seeds);
      BenchmarkSummary row;
      row.r = cfg.r_schedule[static_cast<std::size_t>(ri)];
      row.method = arms[static_cast<std::size_t>(arm_i)].name;
      row.mean_error = mean;
      row.std_error = std::sqrt(var);
      result.summary.push_back(std::move(row));
    }
  }
  return result;
}

TraceResult run_traces(const ExperimentConfig& cfg) {
  const ModelSetup m = build_model(cfg);
  const KernelParams kernel{cfg.beta};
  const LcuWorkspace ws = prepare_workspace(m.problem, kernel, cfg.eps);

  const int points = cfg.trace_points;
  std::vector<double> times(static_cast<std::size_t>(points));
  for (int p = 0; p < points; ++p) {
    times[static_cast<std::size_t>(p)] = cfg.T * p / (points - 1);
  }

  TraceResult result;
  result.headline = m.has_current ? "current" : "magnetization";

  const CMatrix ad = assemble_dense(m.a);
  result.exact.resize(static_cast<std::size_t>(points));
  for (int p = 0; p < points; ++p) {
    const double t = times[static_cast<std::size_t>(p)];
    const CVector u = t > 0.0 ? CVector(matrix_exponential(CMatrix(-kI * ad), t) * m.u0) : m.u0;
    result.exact[static_cast<std::size_t>(p)] = observe_split(m, u, u, t);
  }

  std::vector<Arm> arms;
  arms.push_back({"rand", PlanHook{}});
  arms.push_back({"sym", cfg.protection == "paired" ? paired_hook(m, ws) : alternate_hook(m)});

  const long n_r = static_cast<long>(cfg.r_schedule.size());
  const long total = static_cast<long>(arms.size()) * n_r * cfg.seeds;
  const double wl1 = ws.grid.weight_l1();
  const long even_shots = (cfg.trace_shots + 1) / 2;
  const long odd_shots = cfg.trace_shots / 2;

  result.trials.resize(static_cast<std::size_t>(total));
  run_strided(total, resolve_threads(cfg.threads), [&](long slot) {
    const long arm_i = slot / (n_r * cfg.seeds);
    const long ri = (slot / cfg.seeds) % n_r;
    const int seed_i = static_cast<int>(slot % cfg.seeds);
    const long r = cfg.r_schedule[static_cast<std::size_t>(ri)];

    std::vector<CVector> sum_a(static_cast<std::size_t>(points),
                               CVector::Zero(m.u0.size()));
    std::vector<CVector> sum_b = sum_a;
    for (long s = 0; s < cfg.trace_shots; ++s) {
      Rng outer(derive_stream(cfg.seed, kTraceOuter | static_cast<std::uint64_t>(seed_i),
                              static_cast<std::uint64_t>(s)));
      const OuterSample sample = sample_outer(ws, outer);
      Rng inner(derive_stream(cfg.seed, kTraceInner | static_cast<std::uint64_t>(seed_i),
                              static_cast<std::uint64_t>(s)));
      CqdriftPlan plan = node_plan_for(ws, sample.j, 0.0, r);
      const PlanHook& hook = arms[static_cast<std::size_t>(arm_i)].hook;
      if (hook) plan = hook(plan);
      const std::vector<CVector> snaps = run_trajectory_recorded(plan, m.u0, times, inner);
      auto& sums = (s % 2 == 0) ? sum_a : sum_b;
      for (int p = 0; p < points; ++p) {
        const Complex scale =
            sample.phase * std::exp(ws.sigma * times[static_cast<std::size_t>(p)]);
        sums[static_cast<std::size_t>(p)] += scale * snaps[static_cast<std::size_t>(p)];
      }
    }

    TraceTrial trial;
    trial.r = r;
    trial.seed = seed_i;
    trial.method = arms[static_cast<std::size_t>(arm_i)].name;
    trial.table.resize(static_cast<std::size_t>(points));
    for (int p = 0; p < points; ++p) {
      const CVector va = (wl1 / static_cast<double>(even_shots)) * sum_a[static_cast<std::size_t>(p)];
      const CVector vb = (wl1 / static_cast<double>(odd_shots)) * sum_b[static_cast<std::size_t>(p)];
      trial.table[static_cast<std::size_t>(p)] =
          observe_split(m, va, vb, times[static_cast<std::size_t>(p)]);
      const double gap = std::abs(headline_value(trial.table[static_cast<std::size_t>(p)],
                                                 m.has_current) -
                                  headline_value(result.exact[static_cast<std::size_t>(p)],
                                                 m.has_current));
      trial.deviation = std::max(trial.deviation, gap);
    }
    result.trials[static_cast<std::size_t>(slot)] = std::move(trial);
  });
  return result;
}

ResourceReport resource_estimate(const ResourceInputs& in) {
  if (!(in.eps > 0.0 && in.eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
  if (!(in.delta > 0.0 && in.delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  if (!(in.beta > 0.0 && in.beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
  if (!(in.T > 0.0)) throw DomainError("T must be positive");
  if (in.norm_l < 0.0 || in.lambda < 0.0) throw DomainError("norms must be nonnegative");
  if (!(in.norm_a > 0.0)) throw DomainError("norm_a must be positive");
  if (!(in.q > 0.0)) throw DomainError("q must be positive");
  if (!(in.w > 0.0 && in.norm_o > 0.0)) throw DomainError("w and norm_o must be positive");
  if (in.n_qubits < 1) throw DomainError("n_qubits must be >= 1");

  const KernelParams kernel{in.beta};
  const QuadratureGrid grid = build_grid(kernel, in.eps, in.T, in.norm_l);

  ResourceReport rep;
  rep.K = grid.K;
  rep.h1 = grid.h1;
  rep.Q = grid.Q;
  rep.M = static_cast<long>(grid.size());
  if (in.inhomogeneous) {
    const Source unit = [](double) {
      CVector v(2);
      v << Complex(1.0, 0.0), Complex(0.0, 0.0);
      return v;
    };
    const TimeGrid tg = build_time_grid(unit, 2, in.eps, in.T, in.norm_a);
    rep.Mprime = static_cast<long>(tg.size());
  }
  rep.r = required_segments(in.lambda, in.eps);
  rep.S = required_samples(in.w, in.norm_o, in.eps, in.delta);
  rep.ancilla_coherent = ceil_log2(std::max(1L, rep.M)) + ceil_log2(std::max(1L, rep.Mprime));
  rep.ancilla_free = 1;
  rep.q = in.q;
  rep.gate_proxy =
      static_cast<double>(in.n_qubits) * in.q * in.q * in.lambda * in.lambda / in.eps;
  return rep;
}

std::pair<double, double> l1_time_norms(const TimeDependentGenerator& g) {
  const double T = g.horizon();
  if (!(T > 0.0)) throw DomainError("horizon must be positive");
  constexpr int kIntervals = 256;
  const double h = T / kIntervals;
  double sup = 0.0;
  double integral = 0.0;
  for (int i = 0; i <= kIntervals; ++i) {
    const double value = spectral_norm(g.dense_at(h * i));
    sup = std::max(sup, value);
    const double weight = (i == 0 || i == kIntervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    integral += weight * value;
  }
  integral *= h / 3.0;
  return {integral, T * sup};
}

void write_benchmark_csv(const BenchmarkResult& result, const std::string& dir) {
  std::ofstream main = open_csv(dir, "benchmark.csv");
  main << "r,seed,method,error\n";
  for (const auto& t : result.trials) {
    main << t.r << ',' << t.seed << ',' << t.method << ',' << fmt(t.error) << '\n';
  }
  close_csv(main, "benchmark.csv");

  std::ofstream channel = open_csv(dir, "benchmark_channel.csv");
  channel << "r,seed,method,trace_distance\n";
  for (const auto& t : result.trials) {
    channel << t.r << ',' << t.seed << ',' << t.method << ',' << fmt(t.trace_distance) << '\n';
  }
  close_csv(channel, "benchmark_channel.csv");

  std::ofstream summary = open_csv(dir, "benchmark_summary.csv");
  summary << "r,method,mean_error,std_error\n";
  for (const auto& row : result.summary) {
    summary << row.r << ',' << row.method << ',' << fmt(row.mean_error) << ','
            << fmt(row.std_error) << '\n';
  }
  close_csv(summary, "benchmark_summary.csv");
}

void write_traces_csv(const TraceResult& result, const std::string& dir) {
  std::ofstream out = open_csv(dir, "traces.csv");
  out << "t,magnetization,global_spin,current,eta_expectation,state_norm,method,r,seed\n";
  for (const auto& pt : result.exact) write_trace_row(out, pt, "exact", 0, 0);
  for (const auto& trial : result.trials) {
    for (const auto& pt : trial.table) {
      write_trace_row(out, pt, trial.method, trial.r, trial.seed);
    }
  }
  close_csv(out, "traces.csv");
}

void write_resources_csv(const ResourceReport& report, std::ostream& os) {
  os << "quantity,value,formula_ref\n";
  os << "K," << fmt(report.K) << ",smallest radius with kernel tail <= eps/2\n";
  os << "h1," << fmt(report.h1) << ",1/(e T normL)\n";
  os << "Q," << report.Q << ",ceil(log(8K/(3 C_beta eps))/log 4)\n";
  os << "M," << report.M << ",2 K Q / h1 quadrature nodes\n";
  os << "Mprime," << report.Mprime << ",source time-grid nodes\n";
  os << "r," << report.r << ",ceil(4 lambda^2 / eps)\n";
  os << "S," << report.S << ",ceil((2 W normO)^2 log(2/delta)/(2 eps^2))\n";
  os << "ancilla_coherent," << report.ancilla_coherent << ",ceil(log2 M) + ceil(log2 Mprime)\n";
  os << "ancilla_free," << report.ancilla_free << ",Hadamard-test qubit\n";
  os << "q," << fmt(report.q) << ",(norm1(u0) + L1(b)) / norm1(u(T))\n";
  os << "gate_proxy," << fmt(report.gate_proxy) << ",n q^2 lambda^2 / eps\n";
}

}  // namespace randlchs
