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

// Command-line front end. Subcommands cover single-run simulation, observable
// estimation, the benchmark and trace sweeps, resource estimates, and a fast
// invariant suite. Exit codes: 0 success, 1 usage, 2 numerical contract
// violation, 3 I/O failure. Output CSVs are byte-identical for a fixed config
// and seed; wall-clock metadata goes to a separate metadata file.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "randlchs/bench.hpp"
#include "randlchs/cqdrift.hpp"
#include "randlchs/dense.hpp"
#include "randlchs/kernel.hpp"
#include "randlchs/observable.hpp"
#include "randlchs/quadrature.hpp"
#include "randlchs/randomized_lcu.hpp"
#include "randlchs/symmetry.hpp"
#include "randlchs/urcc.hpp"

namespace {

using namespace randlchs;

struct CliOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::string mode = "mc";
  std::optional<int> threads;
  std::string format = "csv";
};

ExperimentConfig load_experiment(const CliOptions& opt) {
  ExperimentConfig cfg =
      opt.config.empty() ? default_experiment("tfim") : experiment_from_config(ConfigFile::load(opt.config));
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.out) cfg.out_dir = *opt.out;
  if (opt.threads) cfg.threads = *opt.threads;
  return cfg;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open output file: " + path);
  }
  return out;
}

/// Run metadata, the only output that may vary between identical runs.
void write_metadata(const ExperimentConfig& cfg, const std::string& subcommand) {
  std::ofstream out = open_out(cfg.out_dir, "metadata.txt");
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[64];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  out << "subcommand = " << subcommand << "\n"
      << "model = " << cfg.model << "\n"
      << "seed = " << cfg.seed << "\n"
      << "threads = " << cfg.threads << "\n"
      << "timestamp = " << stamp << "\n";
  if (!out.flush()) {
    throw IoError("failed to write metadata file");
  }
}

int cmd_simulate(const CliOptions& opt) {
  ExperimentConfig cfg = load_experiment(opt);
  cfg.seeds = 1;
  const BenchmarkResult result = run_benchmark(cfg);
  std::ofstream out = open_out(cfg.out_dir, "simulate.csv");
  out << "r,seed,method,error\n";
  for (const auto& t : result.trials) {
    out << t.r << "," << t.seed << "," << t.method << "," << t.error << "\n";
    std::printf("r=%-5ld %-14s error=%.6f\n", t.r, t.method.c_str(), t.error);
  }
  if (!out.flush()) {
    throw IoError("failed to write simulate.csv");
  }
  write_metadata(cfg, "simulate");
  return 0;
}

int cmd_observable(const CliOptions& opt) {
  ExperimentConfig cfg = load_experiment(opt);
  std::string mode = opt.mode;
  long samples = 0;
  double delta = 0.05;
  if (!opt.config.empty()) {
    const ConfigFile file = ConfigFile::load(opt.config);
    mode = file.get_string("observable", "mode", mode);
    samples = file.get_long("observable", "samples", samples);
    delta = file.get_double("observable", "delta", delta);
  }
  const ModelSetup m = build_model(cfg);
  const LchsProblem dissipative{m.n_qubits, m.a, {}, {}, cfg.T};
  const LcuWorkspace ws = prepare_workspace(dissipative, KernelParams{cfg.beta}, cfg.eps);
  const PauliSum obs = m.magnetization;

  const CMatrix oracle_prop = matrix_exponential(CMatrix(-assemble_dense(m.a)), cfg.T);
  const CVector u_exact = oracle_prop * m.u0;
  const double oracle = (u_exact.adjoint() * assemble_dense(obs) * u_exact).real()(0, 0);

  std::ofstream out = open_out(cfg.out_dir, "observable.csv");
  out << "mode,estimate_re,estimate_im,std_error,oracle,samples\n";
  if (mode == "exact") {
    const double value = exhaustive_observable(ws, obs, m.u0);
    out << "exact," << value << ",0,0," << oracle << ",0\n";
    std::printf("exact   estimate=%.8f oracle=%.8f\n", value, oracle);
  } else if (mode == "mc") {
    const double w = ws.node_cdf.empty() ? 1.0 : ws.node_cdf.back();
    const long s = samples > 0 ? samples : required_samples(w, 1.0, cfg.eps, delta);
    const long r = cfg.r_schedule.back();
    const int threads =
        cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
    const Algorithm1Result res =
        run_algorithm1(ws, obs, m.u0, s, MMode::shot, r, cfg.seed, nullptr, threads);
    const double est = res.estimate.real() * res.shift_scale;
    out << "mc," << est << "," << res.estimate.imag() * res.shift_scale << ","
        << res.stderr_re * res.shift_scale << "," << oracle << "," << res.samples << "\n";
    std::printf("mc      estimate=%.8f +- %.8f oracle=%.8f (S=%ld, r=%ld)\n", est,
                res.stderr_re * res.shift_scale, oracle, res.samples, r);
  } else if (mode == "urcc") {
    const PauliSum herm = m.a.plus(m.a.adjoint()).scaled(0.5).simplified();
    const TimeDependentGenerator g(herm, cfg.T);
    const long r = urcc_segments(g);
    const long s = samples > 0 ? samples : 10000;
    const UrccResult res = urcc_estimate(g, m.u0, obs, s, r, cfg.seed);
    const CMatrix closed = matrix_exponential(CMatrix(Complex(0, -1) * assemble_dense(herm)), cfg.T);
    const CVector v = closed * m.u0;
    const double closed_oracle = (v.adjoint() * assemble_dense(obs) * v).real()(0, 0);
    out << "urcc," << res.estimate << ",0," << res.stderr_value << "," << closed_oracle << ","
        << res.samples << "\n";
    std::printf("urcc    estimate=%.8f +- %.8f oracle=%.8f (S=%ld, r=%ld)\n", res.estimate,
                res.stderr_value, closed_oracle, res.samples, r);
  } else {
    std::cerr << "unknown mode: " << mode << " (expected exact, mc, or urcc)\n";
    return 1;
  }
  if (!out.flush()) {
    throw IoError("failed to write observable.csv");
  }
  write_metadata(cfg, "observable");
  return 0;
}

int cmd_benchmark(const CliOptions& opt) {
  ExperimentConfig cfg = load_experiment(opt);
  const BenchmarkResult result = run_benchmark(cfg);
  write_benchmark_csv(result, cfg.out_dir);
  write_metadata(cfg, "benchmark");
  for (const auto& s : result.summary) {
    std::printf("r=%-5ld %-14s mean=%.6f std=%.6f\n", s.r, s.method.c_str(), s.mean_error,
                s.std_error);
  }
  return 0;
}

int cmd_traces(const CliOptions& opt) {
  ExperimentConfig cfg = load_experiment(opt);
  const TraceResult result = run_traces(cfg);
  write_traces_csv(result, cfg.out_dir);
  write_metadata(cfg, "traces");
  for (const auto& t : result.trials) {
    std::printf("r=%-5ld %-14s seed=%d deviation=%.6f\n", t.r, t.method.c_str(), t.seed,
                t.deviation);
  }
  return 0;
}

int cmd_resources(const CliOptions& opt) {
  ResourceInputs in;
  std::string out_dir = opt.out ? *opt.out : ".";
  if (!opt.config.empty()) {
    const ConfigFile file = ConfigFile::load(opt.config);
    in.T = file.get_double("resources", "T", in.T);
    in.norm_l = file.get_double("resources", "normL", in.norm_l);
    in.lambda = file.get_double("resources", "lambda", in.lambda);
    in.norm_a = file.get_double("resources", "norm_a", in.norm_a);
    in.eps = file.get_double("resources", "eps", in.eps);
    in.delta = file.get_double("resources", "delta", in.delta);
    in.beta = file.get_double("resources", "beta", in.beta);
    in.q = file.get_double("resources", "q", in.q);
    in.w = file.get_double("resources", "w", in.w);
    in.norm_o = file.get_double("resources", "normO", in.norm_o);
    in.n_qubits = static_cast<int>(file.get_long("resources", "n", in.n_qubits));
    in.inhomogeneous = file.get_bool("resources", "inhomogeneous", in.inhomogeneous);
  }
  const ResourceReport report = resource_estimate(in);
  std::ofstream out = open_out(out_dir, "resources.csv");
  write_resources_csv(report, out);
  if (!out.flush()) {
    throw IoError("failed to write resources.csv");
  }
  std::printf("K               %.12g\n", report.K);
  std::printf("h1              %.12g\n", report.h1);
  std::printf("Q               %ld\n", report.Q);
  std::printf("M               %ld\n", report.M);
  std::printf("Mprime          %ld\n", report.Mprime);
  std::printf("r               %ld\n", report.r);
  std::printf("S               %ld\n", report.S);
  std::printf("ancilla         %d (coherent), %d (ancilla-free)\n", report.ancilla_coherent,
              report.ancilla_free);
  std::printf("gate proxy      %.12g\n", report.gate_proxy);
  return 0;
}

bool check(const char* name, bool ok) {
  std::printf("[%s] %s\n", ok ? " ok " : "fail", name);
  return ok;
}

int cmd_validate(const CliOptions& opt) {
  bool all = true;

  const QuadratureGrid grid = build_grid(KernelParams{0.8}, 1e-2, 1.0, 1.0);
  all &= check("quadrature sum rule |sum c_j - 1| <= eps",
               std::abs(grid.weight_sum() - 1.0) <= 1e-2);

  ExperimentConfig tfim = default_experiment("tfim");
  tfim.tfim.n = 3;
  tfim.T = 1.0;
  if (opt.threads) tfim.threads = *opt.threads;
  const ModelSetup mt = build_model(tfim);
  const LchsProblem dissipative{mt.n_qubits, mt.a, {}, {}, tfim.T};
  const LcuWorkspace ws = prepare_workspace(dissipative, KernelParams{tfim.beta}, 1e-2);
  const CMatrix at = assemble_dense(mt.a);
  const CMatrix reference = matrix_exponential(CMatrix(-at), tfim.T);
  const double recon = (lchs_propagator(ws) - reference).norm() / reference.norm();
  all &= check("deterministic reconstruction ||sum c_j U_j - exp(-AT)|| <= eps", recon <= 1e-2);

  all &= check("tfim PT residual <= 1e-12",
               pt_check(mt.a, {ParityKind::spin_flip, mt.n_qubits}) <= 1e-12);
  all &= check("tfim eta intertwining residual <= 1e-8",
               intertwining_residual(mt.eta.eta, at) <= 1e-8);

  ExperimentConfig hn = default_experiment("hn");
  if (opt.threads) hn.threads = *opt.threads;
  const ModelSetup mh = build_model(hn);
  const Intertwiner gauge = hn_intertwiner(hn.hn);
  all &= check("hn kappa golden", std::abs(gauge.kappa - (-0.30952)) <= 1e-5);
  all &= check("hn jtilde golden", std::abs(gauge.jtilde - 0.95394) <= 1e-5);
  all &= check("hn eta intertwining residual <= 1e-10",
               intertwining_residual(mh.eta.eta, assemble_dense(mh.a)) <= 1e-10);

  const DriftResult dt = conserved_drift(mt.eta.eta, mt.schro, mt.u0);
  const DriftResult dh = conserved_drift(mh.eta.eta, mh.schro, mh.u0);
  all &= check("tfim exact <eta> drift <= 1e-8", dt.drift <= 1e-8);
  all &= check("hn exact <eta> drift <= 1e-8", dh.drift <= 1e-8);

  ResourceInputs in;
  const ResourceReport report = resource_estimate(in);
  const QuadratureGrid same = build_grid(KernelParams{in.beta}, in.eps, in.T, in.norm_l);
  all &= check("resource M matches built grid", report.M == static_cast<long>(same.size()));
  const auto norms = l1_time_norms(mt.schro);
  all &= check("l1-in-time norm <= T * sup norm", norms.first <= norms.second + 1e-12);

  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randomized LCHS simulator"};
  app.require_subcommand(1);
  CliOptions opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "INI config file");
    sub->add_option("--seed", opt.seed, "master seed override");
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--mode", opt.mode, "estimator mode (exact, mc, urcc)");
    sub->add_option("--threads", opt.threads, "worker threads, 0 = hardware");
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv"}));
    return sub;
  };

  CLI::App* simulate = add_common(app.add_subcommand("simulate", "single-seed state evolution"));
  CLI::App* observable =
      add_common(app.add_subcommand("observable", "observable estimation (Algorithm 1, URCC)"));
  CLI::App* benchmark = add_common(app.add_subcommand("benchmark", "final-state error sweep"));
  CLI::App* traces = add_common(app.add_subcommand("traces", "observable traces over time"));
  CLI::App* resources = add_common(app.add_subcommand("resources", "resource estimate table"));
  CLI::App* validate = add_common(app.add_subcommand("validate", "fast invariant suite"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(opt);
    if (observable->parsed()) return cmd_observable(opt);
    if (benchmark->parsed()) return cmd_benchmark(opt);
    if (traces->parsed()) return cmd_traces(opt);
    if (resources->parsed()) return cmd_resources(opt);
    if (validate->parsed()) return cmd_validate(opt);
  } catch (const IoError& e) {
    std::cerr << "randlchs: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "randlchs: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
