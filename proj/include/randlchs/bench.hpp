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

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "randlchs/config.hpp"
#include "randlchs/generator.hpp"
#include "randlchs/models.hpp"
#include "randlchs/randomized_lcu.hpp"
#include "randlchs/symmetry.hpp"
#include "randlchs/types.hpp"

namespace randlchs {

/// Experiment description assembled from a config file or from the built-in
/// model presets; empty string fields select the model default.
struct ExperimentConfig {
  std::string model = "tfim";  ///< tfim | hn
  TfimParams tfim;
  HnParams hn;
  double T = 2.0;
  std::string initial;  ///< plus | zero | site:<j>
  double beta = 0.8;
  double eps = 1e-2;
  std::vector<long> r_schedule{16, 64, 256, 1024};
  long shots = 256;
  int seeds = 40;
  std::string protection;  ///< paired | alternate, the sym arm of benchmarks and traces
  std::string pairing;     ///< identity | spin-flip | reflection, unitary for the paired arm
  int trace_points = 65;
  long trace_shots = 64;
  std::uint64_t seed = 1;
  int threads = 0;  ///< 0 picks hardware concurrency
  std::string out_dir = ".";
};

ExperimentConfig experiment_from_config(const ConfigFile& file);
ExperimentConfig default_experiment(const std::string& model);

/// Model bundle in the Schrodinger convention: the simulated evolution is
/// u(t) = exp(-i A t) u0, wired through the solver as generator iA, which is
/// the setting where <psi| eta |psi> is conserved.
struct ModelSetup {
  std::string name;
  int n_qubits = 0;
  double T = 1.0;
  PauliSum a;                          ///< non-Hermitian A
  TimeDependentGenerator schro{PauliSum{}};  ///< du/dt = -(iA) u
  LchsProblem problem;                 ///< homogeneous problem with generator iA
  CVector u0;
  Intertwiner eta;
  PauliSum magnetization;
  PauliSum global_spin;
  PauliSum current;  ///< empty sum unless has_current
  bool has_current = false;
};

ModelSetup build_model(const ExperimentConfig& cfg);

struct TrialRecord {
  long r = 0;
  int seed = 0;
  std::string method;
  double error = 0.0;           ///< Euclidean distance of normalized states
  double trace_distance = 0.0;  ///< sqrt(1 - |<u_hat|u>|^2) of the same pair
};

struct BenchmarkSummary {
  long r = 0;
  std::string method;
  double mean_error = 0.0;
  double std_error = 0.0;  ///< population standard deviation over seeds
};

struct BenchmarkResult {
  std::vector<TrialRecord> trials;
  std::vector<BenchmarkSummary> summary;
};

/// Error-versus-r benchmark: for every (r, seed) runs the baseline sampler
/// (method rand) and both protected samplers (sym-paired, sym-alternate)
/// against the dense oracle. Deterministic for a fixed config seed; outer
/// node draws share streams across r and methods so curves are comparable.
BenchmarkResult run_benchmark(const ExperimentConfig& cfg);

struct TracePoint {
  double t = 0.0;
  double magnetization = 0.0;
  double global_spin = 0.0;
  double current = 0.0;
  double eta = 0.0;   ///< unnormalized quadratic form <psi|eta|psi>, the conserved quantity
  double norm = 0.0;  ///< state norm; divides eta by norm^2 for the normalized reading
};

using TraceTable = std::vector<TracePoint>;

struct TraceTrial {
  long r = 0;
  int seed = 0;
  std::string method;  ///< rand | sym
  TraceTable table;
  double deviation = 0.0;  ///< max_t |headline(t) - exact headline(t)|
};

struct TraceResult {
  std::string headline;  ///< column the deviation is measured on
  TraceTable exact;
  std::vector<TraceTrial> trials;
};

/// Observable time series: the dense-oracle trace plus randomized traces per
/// (r, seed, method). Normalized-state expectations except the eta column.
TraceResult run_traces(const ExperimentConfig& cfg);

struct ResourceInputs {
  double T = 1.0;
  double norm_l = 1.0;   ///< spectral norm bound of the shifted L
  double lambda = 1.0;   ///< ell-1-in-time norm of the generator coefficients
  double norm_a = 1.0;   ///< sup-norm scale for the source time grid
  double eps = 1e-2;
  double delta = 0.05;
  double beta = 0.8;
  double q = 1.0;        ///< state-preparation cost ratio
  double w = 1.0;        ///< pair-weight constant of Algorithm 1
  double norm_o = 1.0;
  int n_qubits = 1;
  bool inhomogeneous = false;
};

struct ResourceReport {
  double K = 0.0;
  double h1 = 0.0;
  long Q = 0;
  long M = 0;
  long Mprime = 0;
  long r = 0;
  long S = 0;
  int ancilla_coherent = 0;
  int ancilla_free = 0;
  double q = 1.0;
  double gate_proxy = 0.0;  ///< n q^2 lambda^2 / eps
};

/// Closed-form resource arithmetic; M and Mprime are taken from grids built
/// with the same inputs so the report always matches the simulator.
ResourceReport resource_estimate(const ResourceInputs& in);

/// (ell-1-in-time norm, T x sup-norm) of the generator coefficients; the
/// first never exceeds the second.
std::pair<double, double> l1_time_norms(const TimeDependentGenerator& g);

void write_benchmark_csv(const BenchmarkResult& result, const std::string& dir);
void write_traces_csv(const TraceResult& result, const std::string& dir);
void write_resources_csv(const ResourceReport& report, std::ostream& os);

}  // namespace randlchs
